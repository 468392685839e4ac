//! Newton polygons, lower-hull regular subdivisions, affine supports and
//! face truncations.

mod polygon;
mod render;
mod subdivision;
mod support;

pub use polygon::{cross, Point, Polygon};
pub use render::{subdivision_json, subdivision_svg, subdivision_value};
pub use subdivision::{lower_subdivision, subdivide, Cell, Lifting, Subdivision};
pub use support::{is_valid_support, support_for_cell, truncate, truncate_on, AffineSupport};

use crate::ratpoly::{Bivariate, Coefficient};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NewtonError {
    #[error("the zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    #[error("scaled heights exceed the exact predicate range")]
    HeightOverflow,
    #[error("polygon is not a cell of the subdivision induced by this lifting")]
    NotACell,
    #[error("affine function is not a valid support for this cell")]
    InvalidSupport,
    #[error("internal geometry error: {0}")]
    Internal(&'static str),
}

/// Convex hull of the exponent set; for `t`-parametric polynomials `t` is
/// forgotten.
pub fn newton_polygon<C: Coefficient>(p: &Bivariate<C>) -> Result<Polygon, NewtonError> {
    Polygon::hull(p.support().map(|e| Point::new(e.i as i64, e.j as i64))).ok_or(NewtonError::ZeroPolynomial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{bipoly, BiPoly};

    fn poly(pts: &[(i64, i64)]) -> Polygon {
        Polygon::hull(pts.iter().map(|&p| p.into())).unwrap()
    }

    #[test]
    fn newton_polygon_examples() {
        assert_eq!(
            newton_polygon(&bipoly(&[(1, 0, 1), (0, 1, 1), (0, 2, 1)])).unwrap(),
            poly(&[(1, 0), (0, 1), (0, 2)])
        );
        let m = newton_polygon(&bipoly(&[(2, 2, 1)])).unwrap();
        assert_eq!((m.dim(), m.vertices()), (0, &[Point::new(2, 2)][..]));
        assert_eq!(
            newton_polygon(&bipoly(&[(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])).unwrap(),
            poly(&[(0, 0), (1, 0), (1, 1), (0, 1)])
        );
        assert_eq!(newton_polygon(&BiPoly::zero()), Err(NewtonError::ZeroPolynomial));
    }
}
