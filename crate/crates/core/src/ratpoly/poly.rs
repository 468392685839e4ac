use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{pow, Rational, Sign};
use super::tpoly::TPoly;

/// Exponent `(i, j)` of the monomial `X^i Y^j`. Ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Exponent {
    pub i: u32,
    pub j: u32,
}

impl Exponent {
    pub const fn new(i: u32, j: u32) -> Self {
        Exponent { i, j }
    }

    pub fn total(self) -> u32 {
        self.i + self.j
    }
}

impl From<(u32, u32)> for Exponent {
    fn from((i, j): (u32, u32)) -> Self {
        Exponent { i, j }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

/// Coefficient ring of a bivariate polynomial: the rationals, or polynomials
/// in the deformation parameter `t`.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero_coeff() -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, k: &Rational) -> Self;
}

impl Coefficient for Rational {
    fn zero_coeff() -> Self {
        Zero::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, k: &Rational) -> Self {
        self * k
    }
}

/// Sparse polynomial in `X, Y` with coefficients in `C`. Zero coefficients
/// are never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq)]
pub struct Bivariate<C: Coefficient> {
    terms: BTreeMap<Exponent, C>,
}

/// Polynomial in `X, Y` over the rationals.
pub type BiPoly = Bivariate<Rational>;
/// Polynomial in `X, Y` whose coefficients are polynomials in `t`.
pub type ParamPoly = Bivariate<TPoly>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("the zero polynomial has no degree")]
    ZeroDegree,
}

impl<C: Coefficient> Default for Bivariate<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Bivariate<C> {
    pub fn zero() -> Self {
        Bivariate { terms: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn monomial(e: Exponent, c: C) -> Self {
        Self::from_terms([(e, c)])
    }

    /// Adds `c·X^i Y^j` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero_coeff() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero_coeff() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponent) -> Option<&C> {
        self.terms.get(&e)
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Exponent> + '_ {
        self.terms.keys().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Bivariate { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                out.add_term(Exponent::new(ea.i + eb.i, ea.j + eb.j), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c.scale(k))))
    }

    /// Multiplies by `X^i Y^j`.
    pub fn shift(&self, by: Exponent) -> Self {
        Bivariate {
            terms: self.terms.iter().map(|(e, c)| (Exponent::new(e.i + by.i, e.j + by.j), c.clone())).collect(),
        }
    }

    /// Formal partial derivative; coefficients pass through untouched.
    pub fn partial(&self, var: Var) -> Self {
        Self::from_terms(self.terms().filter_map(|(e, c)| {
            let (k, de) = match var {
                Var::X => (e.i, Exponent::new(e.i.checked_sub(1)?, e.j)),
                Var::Y => (e.j, Exponent::new(e.i, e.j.checked_sub(1)?)),
            };
            Some((de, c.scale(&Rational::from_integer(k.into()))))
        }))
    }

    /// `P_XX · P_YY − (P_XY)²`.
    pub fn hessian(&self) -> Self {
        let px = self.partial(Var::X);
        let pxx = px.partial(Var::X);
        let pxy = px.partial(Var::Y);
        let pyy = self.partial(Var::Y).partial(Var::Y);
        pxx.mul(&pyy).sub(&pxy.mul(&pxy))
    }

    pub fn total_degree(&self) -> Result<u32, PolyError> {
        self.support().map(Exponent::total).max().ok_or(PolyError::ZeroDegree)
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.support()
            .map(|e| match var {
                Var::X => e.i,
                Var::Y => e.j,
            })
            .max()
    }

    /// Largest monomial `X^a Y^b` dividing the polynomial.
    pub fn monomial_content(&self) -> Exponent {
        let a = self.support().map(|e| e.i).min().unwrap_or(0);
        let b = self.support().map(|e| e.j).min().unwrap_or(0);
        Exponent::new(a, b)
    }

    /// Splits off the monomial content: `self = X^a Y^b · quotient`.
    pub fn strip_monomial(&self) -> (Exponent, Self) {
        let m = self.monomial_content();
        let q = Bivariate {
            terms: self.terms.iter().map(|(e, c)| (Exponent::new(e.i - m.i, e.j - m.j), c.clone())).collect(),
        };
        (m, q)
    }

    /// Exchanges the roles of `X` and `Y`.
    pub fn swap_vars(&self) -> Self {
        Bivariate { terms: self.terms.iter().map(|(e, c)| (Exponent::new(e.j, e.i), c.clone())).collect() }
    }

    /// Coefficients of `var^k` as polynomials in the other variable (kept
    /// bivariate, with the `var` exponent zeroed).
    pub fn coefficients_in(&self, var: Var) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (e, c) in self.terms() {
            let (k, rest) = match var {
                Var::X => (e.i, Exponent::new(0, e.j)),
                Var::Y => (e.j, Exponent::new(e.i, 0)),
            };
            out.entry(k).or_default().add_term(rest, c.clone());
        }
        out
    }
}

impl BiPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(Exponent::new(0, 0), c)
    }

    pub fn x() -> Self {
        Self::monomial(Exponent::new(1, 0), Rational::one())
    }

    pub fn y() -> Self {
        Self::monomial(Exponent::new(0, 1), Rational::one())
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            acc += c * pow(x, e.i) * pow(y, e.j);
        }
        acc
    }

    pub fn eval_sign(&self, x: &Rational, y: &Rational) -> Sign {
        Sign::of(&self.eval(x, y))
    }

    /// Views the polynomial as a `t`-independent parametric polynomial.
    pub fn to_param(&self) -> ParamPoly {
        ParamPoly::from_terms(self.terms().map(|(e, c)| (e, TPoly::constant(c.clone()))))
    }
}

impl ParamPoly {
    /// Evaluates every coefficient at `t = t0`.
    pub fn specialize_t(&self, t0: &Rational) -> BiPoly {
        BiPoly::from_terms(self.terms().map(|(e, c)| (e, c.eval(t0))))
    }

    /// Projection forgetting `t`: the exponent set in `X, Y`.
    pub fn xy_support(&self) -> Vec<Exponent> {
        self.support().collect()
    }
}

impl<C: Coefficient> fmt::Debug for Bivariate<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(e, c)| ((e.i, e.j), c))).finish()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if e.i > 0 {
                write!(f, "*X^{}", e.i)?;
            }
            if e.j > 0 {
                write!(f, "*Y^{}", e.j)?;
            }
        }
        Ok(())
    }
}

/// Builds a polynomial from integer-coefficient triples `(i, j, c)`.
pub fn bipoly(terms: &[(u32, u32, i64)]) -> BiPoly {
    BiPoly::from_terms(terms.iter().map(|&(i, j, c)| (Exponent::new(i, j), Rational::from_integer(c.into()))))
}
