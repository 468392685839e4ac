//! Exact signs of a bivariate polynomial at dyadic points.
//!
//! A float pass in [`ExtFloat`] computes each value together with an a
//! priori bound on its rounding error; the sign is accepted only when the
//! value exceeds the bound. Otherwise the value is recomputed exactly in
//! integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ext::{ExtFloat, UNIT_ROUNDOFF};
use crate::ratpoly::{BiPoly, Rational, Sign};

/// A nonzero dyadic rational `mant · 2^exp` with `mant` odd (or `±1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dyadic {
    pub mant: i64,
    pub exp: i64,
}

impl Dyadic {
    /// Exact decomposition of a finite nonzero float times `2^shift`.
    pub fn from_scaled_f64(v: f64, shift: i64) -> Dyadic {
        assert!(v.is_finite() && v != 0.0);
        let (m, e) = ExtFloat::from_f64(v).parts();
        // m has at most 53 significant bits.
        let mut mant = (m * (1u64 << 53) as f64) as i64;
        let mut exp = e - 53 + shift;
        let tz = mant.trailing_zeros() as i64;
        mant >>= tz;
        exp += tz;
        Dyadic { mant, exp }
    }

    pub fn to_ext(self) -> ExtFloat {
        ExtFloat::new(self.mant as f64, self.exp)
    }

    pub fn to_rational(self) -> Rational {
        let m = Rational::from_integer(self.mant.into());
        let two = BigInt::from(2);
        if self.exp >= 0 {
            m * Rational::from_integer(num_traits::pow(two, self.exp as usize))
        } else {
            m / Rational::from_integer(num_traits::pow(two, (-self.exp) as usize))
        }
    }

    pub fn neg(self) -> Dyadic {
        Dyadic { mant: -self.mant, exp: self.exp }
    }
}

/// A polynomial prepared for repeated sign queries: integer coefficients
/// (a positive multiple of the input), grouped by power of `Y`.
#[derive(Debug, Clone)]
pub struct SignEvaluator {
    /// `(i, j, c)` with integer `c`.
    terms: Vec<(u32, u32, BigInt)>,
    /// `rows[j]` = `(i, c)` pairs for the coefficient of `Y^j`.
    rows: Vec<Vec<(u32, ExtFloat)>>,
    deg_x: u32,
    gamma: f64,
}

/// Per-`X` data: `g_j(x) = Σ_i c_{ij} x^i` and `Σ_i |c_{ij}| |x|^i`.
#[derive(Debug, Clone)]
pub struct Column {
    x: Dyadic,
    value: Vec<ExtFloat>,
    bound: Vec<ExtFloat>,
}

impl SignEvaluator {
    pub fn new(f: &BiPoly) -> SignEvaluator {
        let mut den = BigInt::one();
        for (_, c) in f.terms() {
            den = den.lcm(c.denom());
        }
        let terms: Vec<(u32, u32, BigInt)> =
            f.terms().map(|(e, c)| (e.i, e.j, c.numer() * (&den / c.denom()))).collect();
        let deg_y = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let deg_x = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut rows = vec![Vec::new(); deg_y as usize + 1];
        for (i, j, c) in &terms {
            rows[*j as usize].push((*i, ExtFloat::from_bigint(c)));
        }
        let n = terms.len() as f64;
        let gamma = 4.0 * (n + deg_x as f64 + 2.0 * deg_y as f64 + 16.0) * UNIT_ROUNDOFF;
        SignEvaluator { terms, rows, deg_x, gamma }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn column(&self, x: Dyadic) -> Column {
        let xe = x.to_ext();
        let mut pows = Vec::with_capacity(self.deg_x as usize + 1);
        let mut p = ExtFloat::ONE;
        for _ in 0..=self.deg_x {
            pows.push(p);
            p = p.mul(xe);
        }
        let mut value = Vec::with_capacity(self.rows.len());
        let mut bound = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut v = ExtFloat::ZERO;
            let mut b = ExtFloat::ZERO;
            for &(i, c) in row {
                let t = c.mul(pows[i as usize]);
                v = v.add(t);
                b = b.add(t.abs());
            }
            value.push(v);
            bound.push(b);
        }
        Column { x, value, bound }
    }

    /// Exact sign at `(col.x, y)`.
    pub fn sign(&self, col: &Column, y: Dyadic) -> Sign {
        let ye = y.to_ext();
        let ya = ye.abs();
        let mut s = ExtFloat::ZERO;
        let mut b = ExtFloat::ZERO;
        for j in (0..col.value.len()).rev() {
            s = s.mul(ye).add(col.value[j]);
            b = b.mul(ya).add(col.bound[j]);
        }
        let err = b.scale(self.gamma);
        if s.cmp_abs(err) == std::cmp::Ordering::Greater {
            if s.signum() > 0 {
                Sign::Positive
            } else {
                Sign::Negative
            }
        } else {
            self.exact_sign(col.x, y)
        }
    }

    /// Exact sign in integer arithmetic.
    pub fn exact_sign(&self, x: Dyadic, y: Dyadic) -> Sign {
        if self.terms.is_empty() {
            return Sign::Zero;
        }
        let shift = |i: u32, j: u32| i as i64 * x.exp + j as i64 * y.exp;
        let base = self.terms.iter().map(|&(i, j, _)| shift(i, j)).min().unwrap();
        let mx = BigInt::from(x.mant);
        let my = BigInt::from(y.mant);
        let mut acc = BigInt::zero();
        for (i, j, c) in &self.terms {
            let v = c * num_traits::pow(mx.clone(), *i as usize) * num_traits::pow(my.clone(), *j as usize);
            acc += v << ((shift(*i, *j) - base) as usize);
        }
        Sign::of_int(&acc)
    }

    /// Exact sign at an arbitrary rational point.
    pub fn sign_at_rational(&self, x: &Rational, y: &Rational) -> Sign {
        let mut acc = Rational::zero();
        for (i, j, c) in &self.terms {
            acc += Rational::from_integer(c.clone())
                * crate::ratpoly::rational::pow(x, *i)
                * crate::ratpoly::rational::pow(y, *j);
        }
        if acc.is_negative() {
            Sign::Negative
        } else if acc.is_zero() {
            Sign::Zero
        } else {
            Sign::Positive
        }
    }
}
