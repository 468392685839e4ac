//! Floating values with an unbounded exponent.
//!
//! An `ExtFloat` is `m · 2^e` with `0.5 ≤ |m| < 1` (or `m = 0`). Products and
//! sums round like `f64` in the mantissa and never overflow or underflow,
//! which is what evaluating polynomials with coefficients `t^ν` at points
//! `2^{±K}` demands.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ratpoly::Rational;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtFloat {
    m: f64,
    e: i64,
}

/// Unit roundoff of `f64`.
pub const UNIT_ROUNDOFF: f64 = 1.1102230246251565e-16;

const EXP_MASK: u64 = 0x7ff << 52;

/// `(m, k)` with `v = m · 2^k` and `0.5 ≤ |m| < 1`, for finite nonzero normal `v`.
fn frexp(v: f64) -> (f64, i64) {
    let bits = v.to_bits();
    let biased = ((bits & EXP_MASK) >> 52) as i64;
    if biased == 0 {
        // Subnormal: rescale into the normal range first.
        let (m, k) = frexp(v * 2f64.powi(64));
        return (m, k - 64);
    }
    let m = f64::from_bits((bits & !EXP_MASK) | (1022u64 << 52));
    (m, biased - 1022)
}

/// `2^k` for `-1022 ≤ k ≤ 1023`, exactly.
fn pow2(k: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

impl ExtFloat {
    pub const ZERO: ExtFloat = ExtFloat { m: 0.0, e: 0 };
    pub const ONE: ExtFloat = ExtFloat { m: 0.5, e: 1 };

    pub fn new(m: f64, e: i64) -> ExtFloat {
        if m == 0.0 {
            return ExtFloat::ZERO;
        }
        debug_assert!(m.is_finite());
        let (mm, k) = frexp(m);
        ExtFloat { m: mm, e: e + k }
    }

    pub fn from_f64(v: f64) -> ExtFloat {
        ExtFloat::new(v, 0)
    }

    /// `(m, e)` with value `m · 2^e` and `0.5 ≤ |m| < 1`.
    pub fn parts(self) -> (f64, i64) {
        (self.m, self.e)
    }

    pub fn mantissa(self) -> f64 {
        self.m
    }

    pub fn exponent(self) -> i64 {
        self.e
    }

    /// Nearest-ish approximation (relative error below `4u`).
    pub fn from_bigint(v: &BigInt) -> ExtFloat {
        if v.is_zero() {
            return ExtFloat::ZERO;
        }
        let bits = v.bits() as i64;
        let shift = (bits - 60).max(0);
        let top: BigInt = v.abs() >> (shift as usize);
        let m = top.to_f64().expect("60-bit integer fits");
        let s = if v.is_negative() { -m } else { m };
        ExtFloat::new(s, shift)
    }

    /// Approximation with relative error below `10u`.
    pub fn from_rational(r: &Rational) -> ExtFloat {
        if r.is_zero() {
            return ExtFloat::ZERO;
        }
        ExtFloat::from_bigint(r.numer()).div(ExtFloat::from_bigint(r.denom()))
    }

    pub fn is_zero(self) -> bool {
        self.m == 0.0
    }

    pub fn neg(self) -> ExtFloat {
        ExtFloat { m: -self.m, e: self.e }
    }

    pub fn abs(self) -> ExtFloat {
        ExtFloat { m: self.m.abs(), e: self.e }
    }

    pub fn signum(self) -> i8 {
        if self.m > 0.0 {
            1
        } else if self.m < 0.0 {
            -1
        } else {
            0
        }
    }

    pub fn mul(self, o: ExtFloat) -> ExtFloat {
        if self.m == 0.0 || o.m == 0.0 {
            return ExtFloat::ZERO;
        }
        let p = self.m * o.m;
        // |p| ∈ [0.25, 1): at most one doubling restores the range.
        if p.abs() < 0.5 {
            ExtFloat { m: p * 2.0, e: self.e + o.e - 1 }
        } else {
            ExtFloat { m: p, e: self.e + o.e }
        }
    }

    pub fn div(self, o: ExtFloat) -> ExtFloat {
        assert!(o.m != 0.0, "division by zero");
        if self.m == 0.0 {
            return ExtFloat::ZERO;
        }
        ExtFloat::new(self.m / o.m, self.e - o.e)
    }

    pub fn add(self, o: ExtFloat) -> ExtFloat {
        if self.m == 0.0 {
            return o;
        }
        if o.m == 0.0 {
            return self;
        }
        let (big, small) = if self.e >= o.e { (self, o) } else { (o, self) };
        let d = big.e - small.e;
        if d > 80 {
            // Below half an ulp of the larger operand.
            return big;
        }
        let s = big.m + small.m * pow2(-d);
        ExtFloat::new(s, big.e)
    }

    pub fn sub(self, o: ExtFloat) -> ExtFloat {
        self.add(o.neg())
    }

    /// Multiplication by `2^k`, exact.
    pub fn ldexp(self, k: i64) -> ExtFloat {
        if self.m == 0.0 {
            self
        } else {
            ExtFloat { m: self.m, e: self.e + k }
        }
    }

    pub fn scale(self, f: f64) -> ExtFloat {
        self.mul(ExtFloat::from_f64(f))
    }

    /// Compares magnitudes.
    pub fn cmp_abs(self, o: ExtFloat) -> Ordering {
        match (self.m == 0.0, o.m == 0.0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.e.cmp(&o.e).then(self.m.abs().partial_cmp(&o.m.abs()).unwrap()),
        }
    }

    pub fn max_abs(self, o: ExtFloat) -> ExtFloat {
        if self.cmp_abs(o) == Ordering::Less {
            o.abs()
        } else {
            self.abs()
        }
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, k: u32) -> ExtFloat {
        let mut acc = ExtFloat::ONE;
        let mut b = self;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(b);
            }
        }
        acc
    }

    /// `log2 |v|`; `-inf` for zero.
    pub fn log2_abs(self) -> f64 {
        if self.m == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.m.abs().log2() + self.e as f64
        }
    }

    /// Plain `f64` value, saturating to `±inf` or `0`.
    pub fn to_f64(self) -> f64 {
        if self.m == 0.0 {
            0.0
        } else if self.e > 1024 {
            self.m.signum() * f64::INFINITY
        } else if self.e < -1074 {
            0.0
        } else if self.e < -1021 {
            self.m * pow2(-1000) * pow2(self.e + 1000)
        } else {
            self.m * pow2(self.e)
        }
    }
}

/// `2^f` for `0 ≤ f < 1` using only correctly rounded basic operations, so
/// that the result is identical on every IEEE platform.
pub fn exp2_frac(f: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&f));
    let x = f * std::f64::consts::LN_2;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..30 {
        term = term * x / k as f64;
        sum += term;
    }
    sum
}
