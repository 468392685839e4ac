//! Real curve topology at desk scale: exact-sign sampling on dyadic
//! log-scale grids, marching squares with refinement audits, and the
//! discriminant arguments used for the building-block pieces.

mod census;
mod discriminant;
mod eval;
pub mod ext;
mod grid;
mod lemmas;
mod smooth;
mod svg;

pub use census::{
    count_components, count_with_curve, trace_curve, ComponentCensus, ComponentInfo, CurveComplex, GridEdge, Segment,
};
pub use discriminant::{quadratic_discriminant, real_roots_on_torus, sturm_count, UniPoly};
pub use eval::{Dyadic, SignEvaluator};
pub use grid::{
    axis_logs, axis_magnitudes, plane_coords, plane_grid, sign_grid, PlaneGrid, Quadrant, SignGrid, Window,
    MIN_RESOLUTION,
};
pub use lemmas::{
    check_empty_piece, check_oval_piece, empty_piece_evidence, oval_piece_evidence, EmptyEvidence, EmptyFamily,
    OvalEvidence, OvalFamily,
};
pub use smooth::{smoothness_spotcheck, ComponentSmoothness, SmoothnessReport};
pub use svg::curve_svg;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("resolution {0} is below the minimum of 16")]
    ResolutionTooSmall(usize),
    #[error("window bound {0} must be positive")]
    BadWindow(String),
    #[error("degree in {var} is {found}, expected 2")]
    Degree { var: char, found: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}
