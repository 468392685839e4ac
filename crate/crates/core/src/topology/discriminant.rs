use num_traits::{One, Signed, Zero};

use super::TopologyError;
use crate::ratpoly::{BiPoly, Exponent, Rational, Var};

fn var_char(v: Var) -> char {
    match v {
        Var::X => 'X',
        Var::Y => 'Y',
    }
}

/// `b² − 4ac` for `F = a·v² + b·v + c`, with `a, b, c` polynomials in the
/// other variable.
pub fn quadratic_discriminant(f: &BiPoly, var: Var) -> Result<BiPoly, TopologyError> {
    let deg = f.degree_in(var).unwrap_or(0);
    if deg != 2 || f.is_zero() {
        return Err(TopologyError::Degree { var: var_char(var), found: deg });
    }
    let parts = f.coefficients_in(var);
    let get = |k: u32| parts.get(&k).cloned().unwrap_or_default();
    let (a, b, c) = (get(2), get(1), get(0));
    Ok(b.mul(&b).sub(&a.mul(&c).scale(&Rational::from_integer(4.into()))))
}

/// Dense univariate polynomial, `coeffs[k]` the coefficient of `v^k`, with
/// no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// The polynomial as a function of `var` alone.
    pub fn from_bipoly(f: &BiPoly, var: Var) -> Result<UniPoly, TopologyError> {
        let other = f.degree_in(var.other()).unwrap_or(0);
        if other != 0 {
            return Err(TopologyError::Precondition(format!("depends on {}", var_char(var.other()))));
        }
        let deg = f.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in f.terms() {
            let k = match var {
                Var::X => e.i,
                Var::Y => e.j,
            };
            coeffs[k as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_bipoly(&self, var: Var) -> BiPoly {
        BiPoly::from_terms(self.coeffs.iter().enumerate().map(|(k, c)| {
            let e = match var {
                Var::X => Exponent::new(k as u32, 0),
                Var::Y => Exponent::new(0, k as u32),
            };
            (e, c.clone())
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, v: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * v + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(k.into())).collect(),
        )
    }

    /// Remainder of division by a nonzero `d`.
    fn rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("nonzero divisor");
        let lead = &d.coeffs[dd];
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let q = &r[k] / lead;
            for (m, c) in d.coeffs.iter().enumerate() {
                r[k - dd + m] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    fn sign_at_infinity(&self, positive: bool) -> i8 {
        let Some(d) = self.degree() else { return 0 };
        let lead = if self.coeffs[d].is_positive() { 1 } else { -1 };
        if positive || d % 2 == 0 {
            lead
        } else {
            -lead
        }
    }
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        chain.push(UniPoly::new(r.coeffs.into_iter().map(|c| -c).collect()));
    }
    chain.pop();
    chain
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Distinct real roots of `p` in `(lo, hi]`; `None` bounds are infinite.
pub fn sturm_count(p: &UniPoly, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(p);
    let at = |b: Option<&Rational>, positive: bool| match b {
        Some(v) => variations(chain.iter().map(|q| sign_of(&q.eval(v)))),
        None => variations(chain.iter().map(|q| q.sign_at_infinity(positive))),
    };
    at(lo, false).saturating_sub(at(hi, true))
}

/// Distinct real roots of `p` on `ℝ \ {0}`.
pub fn real_roots_on_torus(p: &UniPoly) -> usize {
    let all = sturm_count(p, None, None);
    if p.eval(&Rational::zero()).is_zero() {
        all - 1
    } else {
        all
    }
}

/// Whether `p` is negative at every point of `ℝ \ {0}`.
pub(crate) fn negative_on_torus(p: &UniPoly) -> bool {
    if p.is_zero() {
        return false;
    }
    let one = Rational::one();
    real_roots_on_torus(p) == 0 && sign_of(&p.eval(&one)) < 0 && sign_of(&p.eval(&-one)) < 0
}
