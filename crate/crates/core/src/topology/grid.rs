use std::fmt;

use serde::{Deserialize, Serialize};

use super::eval::{Dyadic, SignEvaluator};
use super::ext::{exp2_frac, ExtFloat};
use super::TopologyError;
use crate::ratpoly::{BiPoly, Rational, Sign};

pub const MIN_RESOLUTION: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quadrant {
    #[serde(rename = "++")]
    PP,
    #[serde(rename = "+-")]
    PM,
    #[serde(rename = "-+")]
    MP,
    #[serde(rename = "--")]
    MM,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::PP, Quadrant::PM, Quadrant::MP, Quadrant::MM];

    pub fn from_signs(x_positive: bool, y_positive: bool) -> Quadrant {
        match (x_positive, y_positive) {
            (true, true) => Quadrant::PP,
            (true, false) => Quadrant::PM,
            (false, true) => Quadrant::MP,
            (false, false) => Quadrant::MM,
        }
    }

    pub fn signs(self) -> (bool, bool) {
        match self {
            Quadrant::PP => (true, true),
            Quadrant::PM => (true, false),
            Quadrant::MP => (false, true),
            Quadrant::MM => (false, false),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// The quadrant after exchanging `X` and `Y`.
    pub fn swapped(self) -> Quadrant {
        let (x, y) = self.signs();
        Quadrant::from_signs(y, x)
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.signs();
        write!(f, "{}{}", if x { '+' } else { '-' }, if y { '+' } else { '-' })
    }
}

/// Samples `X = σ_x 2^u`, `Y = σ_y 2^v`, with `u, v` on `n` evenly spaced
/// values in `[−K, K]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub quadrant: Quadrant,
    pub k: Rational,
    pub n: usize,
}

impl Window {
    pub fn new(quadrant: Quadrant, k: Rational, n: usize) -> Result<Window, TopologyError> {
        check_window(&k, n)?;
        Ok(Window { quadrant, k, n })
    }
}

pub(crate) fn check_window(k: &Rational, n: usize) -> Result<(), TopologyError> {
    if n < MIN_RESOLUTION {
        return Err(TopologyError::ResolutionTooSmall(n));
    }
    if *k <= Rational::from_integer(0.into()) {
        return Err(TopologyError::BadWindow(crate::ratpoly::format_rational(k)));
    }
    Ok(())
}

/// The magnitudes `2^{u_a}`, `a = 0 … n−1`, increasing. Each is the double
/// nearest to `2^{u_a}` as computed by basic float operations only, so the
/// samples are the same on every platform.
pub fn axis_magnitudes(k: &Rational, n: usize) -> Vec<Dyadic> {
    let kf = ExtFloat::from_rational(k).to_f64();
    (0..n)
        .map(|a| {
            let u = -kf + 2.0 * kf * (a as f64) / ((n - 1) as f64);
            let fl = u.floor();
            let frac = u - fl;
            Dyadic::from_scaled_f64(exp2_frac(frac), fl as i64)
        })
        .collect()
}

/// `log2` of each axis sample, for drawing.
pub fn axis_logs(k: &Rational, n: usize) -> Vec<f64> {
    let kf = ExtFloat::from_rational(k).to_f64();
    (0..n).map(|a| -kf + 2.0 * kf * (a as f64) / ((n - 1) as f64)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignGrid {
    pub window: Window,
    /// Row-major, `signs[b * n + a]` at `(X_a, Y_b)`.
    pub signs: Vec<Sign>,
}

impl SignGrid {
    pub fn at(&self, a: usize, b: usize) -> Sign {
        self.signs[b * self.window.n + a]
    }

    /// The common sign of every sample, if there is one.
    pub fn uniform(&self) -> Option<Sign> {
        let first = *self.signs.first()?;
        self.signs.iter().all(|&s| s == first).then_some(first)
    }
}

fn signed(d: Dyadic, positive: bool) -> Dyadic {
    if positive {
        d
    } else {
        d.neg()
    }
}

/// Exact signs of `F` at every sample of one quadrant window.
pub fn sign_grid(f: &BiPoly, w: &Window) -> Result<SignGrid, TopologyError> {
    if f.is_zero() {
        return Err(TopologyError::ZeroPolynomial);
    }
    check_window(&w.k, w.n)?;
    let ev = SignEvaluator::new(f);
    let mags = axis_magnitudes(&w.k, w.n);
    let (px, py) = w.quadrant.signs();
    let ys: Vec<Dyadic> = mags.iter().map(|&m| signed(m, py)).collect();
    let mut signs = vec![Sign::Zero; w.n * w.n];
    for (a, &m) in mags.iter().enumerate() {
        let col = ev.column(signed(m, px));
        for (b, &y) in ys.iter().enumerate() {
            signs[b * w.n + a] = ev.sign(&col, y);
        }
    }
    Ok(SignGrid { window: w.clone(), signs })
}

/// The four quadrant windows joined into one `2n × 2n` grid with increasing
/// coordinates: `−2^{u_{n−1}}, …, −2^{u_0}, 2^{u_0}, …, 2^{u_{n−1}}` on each
/// axis. Cells straddling index `n − 1 … n` cross a coordinate axis.
#[derive(Debug, Clone)]
pub struct PlaneGrid {
    pub n: usize,
    pub coords: Vec<Dyadic>,
    /// `signs[b * 2n + a]`, exact.
    pub signs: Vec<Sign>,
}

impl PlaneGrid {
    pub fn side(&self) -> usize {
        2 * self.n
    }

    pub fn at(&self, a: usize, b: usize) -> Sign {
        self.signs[b * 2 * self.n + a]
    }

    /// Sign with zero counted as positive.
    pub fn positive(&self, a: usize, b: usize) -> bool {
        self.at(a, b) != Sign::Negative
    }

    /// Whether index `a` lies on the positive side of its axis.
    pub fn is_positive_index(&self, a: usize) -> bool {
        a >= self.n
    }
}

pub fn plane_coords(k: &Rational, n: usize) -> Vec<Dyadic> {
    let mags = axis_magnitudes(k, n);
    mags.iter().rev().map(|m| m.neg()).chain(mags.iter().copied()).collect()
}

pub fn plane_grid(ev: &SignEvaluator, k: &Rational, n: usize) -> PlaneGrid {
    let coords = plane_coords(k, n);
    let side = coords.len();
    let mut signs = vec![Sign::Zero; side * side];
    for (a, &x) in coords.iter().enumerate() {
        let col = ev.column(x);
        for (b, &y) in coords.iter().enumerate() {
            signs[b * side + a] = ev.sign(&col, y);
        }
    }
    PlaneGrid { n, coords, signs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{bipoly, int};

    #[test]
    fn constant_and_monomial_grids() {
        let w = Window::new(Quadrant::PM, int(3), 16).unwrap();
        assert_eq!(sign_grid(&bipoly(&[(0, 0, 1)]), &w).unwrap().uniform(), Some(Sign::Positive));
        assert_eq!(sign_grid(&bipoly(&[(1, 1, 1)]), &w).unwrap().uniform(), Some(Sign::Negative));
        let h = bipoly(&[(2, 2, 1), (2, 3, 1)]).hessian();
        for q in Quadrant::ALL {
            let w = Window::new(q, int(6), 32).unwrap();
            assert_eq!(sign_grid(&h, &w).unwrap().uniform(), Some(Sign::Negative));
        }
    }

    #[test]
    fn samples_are_symmetric_and_monotone() {
        let m = axis_magnitudes(&int(4), 17);
        assert_eq!(m[0].to_rational(), crate::ratpoly::rat(1, 16));
        assert_eq!(m[8].to_rational(), int(1));
        assert_eq!(m[16].to_rational(), int(16));
        let c = plane_coords(&int(4), 17);
        assert!(c.windows(2).all(|w| w[0].to_rational() < w[1].to_rational()));
    }

    #[test]
    fn rejects_bad_windows() {
        assert_eq!(Window::new(Quadrant::PP, int(1), 8), Err(TopologyError::ResolutionTooSmall(8)));
        assert!(Window::new(Quadrant::PP, int(0), 64).is_err());
    }
}
