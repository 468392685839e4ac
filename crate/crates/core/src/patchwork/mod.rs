//! The patchwork construction: piece layouts, their completion to a regular
//! subdivision, lifting heights, assembly of `Q_t`, the exact Hessian gluing
//! check and the choice of a concrete small `t`.

mod gluing;
mod heights;
mod layout;
mod select;

pub use gluing::{assemble, verify_hessian_gluing, GluingRecord, GluingReport};
pub use heights::{max_slope, solve_heights};
pub use layout::{complete_layout, interiors_overlap, paper_layout, Layout, Mode, Piece, PieceKind};
pub use select::{
    census_at, default_window, explore_t, hessian_curve_at, lifting_slope, select_t, CountSettings, SelectStep,
    Selection,
};

use crate::newton::{NewtonError, Point, Polygon};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PatchworkError {
    #[error("layouts need d >= 4, got {0}")]
    DegreeTooSmall(u32),
    #[error("piece cells {0} and {1} overlap")]
    Overlap(String, String),
    #[error("piece polynomial support is not the full lattice point set of {0}")]
    PieceSupport(String),
    #[error("layout JSON: {0}")]
    LayoutFormat(String),
    #[error("layout completion failed: {0}")]
    Completion(String),
    #[error("layout has no cells")]
    EmptyLayout,
    #[error("no lifting realizes the layout; violated interior edges: {}", fmt_edges(.edges))]
    Infeasible { edges: Vec<(Point, Point)> },
    #[error("recomputed lower hull does not reproduce the layout cells")]
    RecheckFailed,
    #[error("pieces disagree on the coefficient at {0}")]
    Conflict(Point),
    #[error("no usable height at {0}")]
    MissingHeight(Point),
    #[error("census did not stabilize within {0} refinements of t")]
    NoStabilization(usize),
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Topology(#[from] crate::topology::TopologyError),
    #[error("internal error: {0}")]
    Internal(&'static str),
}

fn fmt_edges(edges: &[(Point, Point)]) -> String {
    edges.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(", ")
}

/// A triangle with a shrunken copy inside and the three quadrilaterals in
/// between cut by diagonals that all turn the same way. No convex lifting
/// induces it.
pub fn twisted_layout() -> Layout {
    let p = |x: i64, y: i64| Point::new(x, y);
    let (a, b, c) = (p(0, 0), p(8, 0), p(0, 8));
    let (ia, ib, ic) = (p(2, 2), p(4, 2), p(2, 4));
    let tris = [[ia, ib, ic], [a, b, ib], [a, ib, ia], [b, c, ic], [b, ic, ib], [c, a, ia], [c, ia, ic]];
    let pieces = tris.iter().map(|t| Piece::filler(Polygon::hull(t.iter().copied()).unwrap())).collect();
    Layout { d: 8, mode: Mode::Literal, pieces }
}
