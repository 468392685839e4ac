use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::Coefficient;
use super::rational::{pow, Rational};

/// Polynomial in the deformation parameter `t` with nonnegative integer
/// exponents. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `c · t^k`.
    pub fn monomial(k: u32, c: Rational) -> Self {
        Self::from_terms([(k, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut out = TPoly::default();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, k: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(power, coefficient)` pairs in increasing power.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lowest power of `t` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval(&self, t0: &Rational) -> Rational {
        self.terms().fold(Rational::zero(), |acc, (k, c)| acc + c * pow(t0, k))
    }
}

impl Coefficient for TPoly {
    fn zero_coeff() -> Self {
        TPoly::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        TPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, -c);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = TPoly::zero();
        for (ka, ca) in self.terms() {
            for (kb, cb) in other.terms() {
                out.add_term(ka + kb, ca * cb);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        TPoly { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }
    fn scale(&self, k: &Rational) -> Self {
        TPoly::from_terms(self.terms().map(|(p, c)| (p, c * k)))
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}
