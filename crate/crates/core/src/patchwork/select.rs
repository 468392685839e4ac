use num_traits::{One, Zero};
use serde::Serialize;

use super::heights::max_slope;
use super::PatchworkError;
use crate::newton::{lower_subdivision, Polygon};
use crate::ratpoly::{format_rational, int, BiPoly, Exponent, ParamPoly, Rational};
use crate::topology::{count_components, ComponentCensus};

/// Settings for counting the Hessian curve at a concrete `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountSettings {
    pub resolution: usize,
    /// Fixed window bound; `None` derives it from the lifting and `t`.
    pub window_k: Option<Rational>,
    /// Added to the largest cell scale when deriving the window bound.
    pub margin: Rational,
    pub max_refinements: usize,
}

impl Default for CountSettings {
    fn default() -> CountSettings {
        CountSettings { resolution: 512, window_k: None, margin: int(1), max_refinements: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelectStep {
    pub t: String,
    pub window_k: String,
    pub census: ComponentCensus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub t: Rational,
    pub window_k: Rational,
    pub census: ComponentCensus,
    pub trace: Vec<SelectStep>,
    /// Two consecutive values agreed. When false, `t` is the value with the
    /// most compact components in the trace (earliest on ties).
    pub stabilized: bool,
}

/// `⌈log₂(1/t)⌉` for `0 < t < 1`.
fn log2_inverse_ceil(t: &Rational) -> Rational {
    let mut k = 0i64;
    let mut p = Rational::one();
    while &p > t {
        p /= int(2);
        k += 1;
    }
    int(k)
}

/// Largest `max(|α|, |β|)` over the supports of the 2-cells of `Q`'s own
/// subdivision.
pub fn lifting_slope(q: &ParamPoly) -> Result<Rational, PatchworkError> {
    let (lifting, sub) = lower_subdivision(q)?;
    let cells: Vec<Polygon> = sub.cells_of_dim(2).map(|c| c.polygon.clone()).collect();
    Ok(max_slope(&lifting, &cells))
}

/// `margin + slope · ⌈log₂(1/t)⌉`: every cell's chart lives at
/// `|log₂|X||, |log₂|Y|| ≤ slope · log₂(1/t)`.
pub fn default_window(slope: &Rational, t: &Rational, margin: &Rational) -> Rational {
    margin + slope * log2_inverse_ceil(t)
}

/// `hessian(Q)|_t` with its monomial factor `X^aY^b` divided out. The
/// quotient cuts out the same curve in the torus; the axes themselves are
/// left out of the census.
pub fn hessian_curve_at(q: &ParamPoly, t: &Rational) -> (Exponent, BiPoly) {
    q.hessian().specialize_t(t).strip_monomial()
}

/// Census of the Hessian curve of `Q` at one `t` (see [`hessian_curve_at`]).
pub fn census_at(
    q: &ParamPoly,
    t: &Rational,
    cfg: &CountSettings,
) -> Result<(Rational, ComponentCensus), PatchworkError> {
    let k = match &cfg.window_k {
        Some(k) => k.clone(),
        None => default_window(&lifting_slope(q)?, t, &cfg.margin),
    };
    let (_, h) = hessian_curve_at(q, t);
    Ok((k.clone(), count_components(&h, &k, cfg.resolution)?))
}

fn same_counts(a: &ComponentCensus, b: &ComponentCensus) -> bool {
    a.compact_in_r2 == b.compact_in_r2 && a.per_quadrant == b.per_quadrant && a.boundary_touching == b.boundary_touching
}

/// Walks `t = 1/2, 1/4, 1/16, …` until two consecutive values give the same
/// census with at least `predicted` compact components, and returns the
/// first of the two.
pub fn select_t(q: &ParamPoly, predicted: usize, cfg: &CountSettings) -> Result<Selection, PatchworkError> {
    let s = explore_t(q, predicted, cfg)?;
    if !s.stabilized {
        return Err(PatchworkError::NoStabilization(cfg.max_refinements));
    }
    Ok(s)
}

/// [`select_t`] that keeps the trace when no pair of values agrees.
pub fn explore_t(q: &ParamPoly, predicted: usize, cfg: &CountSettings) -> Result<Selection, PatchworkError> {
    let h = q.hessian();
    if h.is_zero() {
        return Err(crate::topology::TopologyError::ZeroPolynomial.into());
    }
    let slope = lifting_slope(q)?;
    let mut t = Rational::new(1.into(), 2.into());
    let mut trace: Vec<SelectStep> = Vec::new();
    let mut seen: Vec<(Rational, Rational, ComponentCensus)> = Vec::new();
    for _ in 0..=cfg.max_refinements {
        let k = cfg.window_k.clone().unwrap_or_else(|| default_window(&slope, &t, &cfg.margin));
        let census = count_components(&h.specialize_t(&t).strip_monomial().1, &k, cfg.resolution)?;
        trace.push(SelectStep { t: format_rational(&t), window_k: format_rational(&k), census: census.clone() });
        if let Some((pt, pk, pc)) = seen.last() {
            if same_counts(pc, &census) && pc.compact_in_r2 >= predicted {
                return Ok(Selection {
                    t: pt.clone(),
                    window_k: pk.clone(),
                    census: pc.clone(),
                    trace,
                    stabilized: true,
                });
            }
        }
        let next = &t * &t;
        seen.push((t, k, census));
        t = next;
        debug_assert!(!t.is_zero());
    }
    let best = seen.iter().rev().max_by_key(|(_, _, c)| c.compact_in_r2).expect("at least one step");
    let (t, window_k, census) = best.clone();
    Ok(Selection { t, window_k, census, trace, stabilized: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{bipoly, rat};

    #[test]
    fn window_bound() {
        assert_eq!(log2_inverse_ceil(&rat(1, 16)), int(4));
        assert_eq!(log2_inverse_ceil(&rat(1, 3)), int(2));
        assert_eq!(default_window(&int(3), &rat(1, 4), &int(1)), int(7));
    }

    #[test]
    fn t_independent_input_stops_at_once() {
        // Hessian of X²Y²(1 + X + Y): one oval.
        let q = bipoly(&[(2, 2, 1), (3, 2, 1), (2, 3, 1)]).to_param();
        let cfg = CountSettings { resolution: 128, window_k: Some(int(6)), ..CountSettings::default() };
        let s = select_t(&q, 1, &cfg).unwrap();
        assert_eq!(s.t, rat(1, 2));
        assert_eq!(s.trace.len(), 2);
        assert_eq!(s.census.compact_in_r2, 1);
        assert_eq!(s.trace[0].census, s.trace[1].census);
    }

    #[test]
    fn unreachable_prediction() {
        let q = bipoly(&[(2, 2, 1), (3, 2, 1), (2, 3, 1)]).to_param();
        let cfg =
            CountSettings { resolution: 32, window_k: Some(int(6)), max_refinements: 2, ..CountSettings::default() };
        assert_eq!(select_t(&q, 5, &cfg), Err(PatchworkError::NoStabilization(2)));
        let s = explore_t(&q, 5, &cfg).unwrap();
        assert!(!s.stabilized);
        assert_eq!(s.trace.len(), 3);
        assert_eq!(s.t, rat(1, 2));
    }
}
