use std::collections::BTreeMap;

use serde::Serialize;

use super::layout::Layout;
use super::PatchworkError;
use crate::newton::{lower_subdivision, newton_polygon, truncate_on, Lifting, Point, Polygon};
use crate::ratpoly::{Exponent, ParamPoly, Rational, TPoly};

/// `a_{i,j}(t) = c_{i,j} · t^{ν(i,j)}` with `c_{i,j}` read off the piece
/// containing `(i, j)`; pieces sharing a point must agree on it.
pub fn assemble(l: &Layout, v: &Lifting) -> Result<ParamPoly, PatchworkError> {
    let mut coeffs: BTreeMap<Point, Rational> = BTreeMap::new();
    for piece in &l.pieces {
        for (e, c) in piece.poly.terms() {
            let p = Point::new(e.i as i64, e.j as i64);
            match coeffs.get(&p) {
                Some(prev) if prev != c => return Err(PatchworkError::Conflict(p)),
                Some(_) => {}
                None => {
                    coeffs.insert(p, c.clone());
                }
            }
        }
    }
    let mut q = ParamPoly::zero();
    for (p, c) in coeffs {
        let h = v.height(p).ok_or(PatchworkError::MissingHeight(p))?;
        if !h.is_integer() || *h < Rational::from_integer(0.into()) {
            return Err(PatchworkError::MissingHeight(p));
        }
        let k: u32 = h.to_integer().try_into().map_err(|_| PatchworkError::MissingHeight(p))?;
        q.add_term(Exponent::new(p.x as u32, p.y as u32), TPoly::monomial(k, c));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingRecord {
    pub cell: usize,
    pub verts: Vec<[i64; 2]>,
    /// The cell lies in `{x ≥ 2, y ≥ 2}`.
    pub eligible: bool,
    /// The Newton polygon of the truncation's Hessian is a cell of the
    /// Hessian's own subdivision.
    pub hessian_cell_found: bool,
    /// The Hessian's truncation there equals the truncation's Hessian.
    pub truncations_equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingReport {
    pub cells: Vec<GluingRecord>,
    pub pass: bool,
}

impl GluingReport {
    pub fn eligible_count(&self) -> usize {
        self.cells.iter().filter(|c| c.eligible).count()
    }
}

fn verts(p: &Polygon) -> Vec<[i64; 2]> {
    p.vertices().iter().map(|v| [v.x, v.y]).collect()
}

/// For every top-dimensional cell `Δ'` of `Q`'s subdivision, checks that
/// `Δ'_H = newton_polygon(hessian(Q^{Δ'}))` is a cell of the subdivision of
/// `hessian(Q)` and that `hessian(Q)^{Δ'_H} = hessian(Q^{Δ'})` exactly.
pub fn verify_hessian_gluing(q: &ParamPoly) -> Result<GluingReport, PatchworkError> {
    let (_, sub) = lower_subdivision(q)?;
    let h = q.hessian();
    let hsub = if h.is_zero() { None } else { Some(lower_subdivision(&h)?.1) };
    let mut cells = Vec::new();
    for (k, c) in sub.top_cells().enumerate() {
        let eligible = c.polygon.dim() == 2 && c.polygon.in_quadrant(2, 2);
        let local = truncate_on(q, c)?.hessian();
        let (mut found, mut equal) = (false, false);
        if let (false, Some(hsub)) = (local.is_zero(), &hsub) {
            let target = newton_polygon(&local)?;
            if let Some(hc) = hsub.find(&target) {
                found = true;
                equal = truncate_on(&h, hc)? == local;
            }
        }
        cells.push(GluingRecord {
            cell: k,
            verts: verts(&c.polygon),
            eligible,
            hessian_cell_found: found,
            truncations_equal: equal,
        });
    }
    let pass = cells.iter().filter(|c| c.eligible).all(|c| c.hessian_cell_found && c.truncations_equal);
    Ok(GluingReport { cells, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::Cell;
    use crate::patchwork::layout::{complete_layout, paper_layout, Mode, Piece, PieceKind};
    use crate::patchwork::solve_heights;
    use crate::ratpoly::{bipoly, int};

    #[test]
    fn square_assembly() {
        let pieces = vec![
            Piece::new(PieceKind::Filler, bipoly(&[(0, 0, 1), (1, 0, 1), (0, 1, 1)])).unwrap(),
            Piece::new(PieceKind::Filler, bipoly(&[(1, 0, 1), (0, 1, 1), (1, 1, 1)])).unwrap(),
        ];
        let l = Layout { d: 4, mode: Mode::Literal, pieces };
        let v =
            Lifting::from_pairs([((0, 0), 0), ((1, 0), 0), ((0, 1), 0), ((1, 1), 1)].map(|(p, h)| (p.into(), int(h))));
        let q = assemble(&l, &v).unwrap();
        let expected = ParamPoly::from_terms(
            [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)]
                .map(|(i, j, k)| (Exponent::new(i, j), TPoly::monomial(k, int(1)))),
        );
        assert_eq!(q, expected);
    }

    #[test]
    fn conflicting_pieces() {
        let pieces = vec![
            Piece::new(PieceKind::Filler, bipoly(&[(0, 0, 1), (1, 0, 1), (0, 1, 1)])).unwrap(),
            Piece::new(PieceKind::Filler, bipoly(&[(1, 0, 2), (0, 1, 1), (1, 1, 1)])).unwrap(),
        ];
        let l = Layout { d: 4, mode: Mode::Literal, pieces };
        let v =
            Lifting::from_pairs([((0, 0), 0), ((1, 0), 0), ((0, 1), 0), ((1, 1), 1)].map(|(p, h)| (p.into(), int(h))));
        assert_eq!(assemble(&l, &v), Err(PatchworkError::Conflict(Point::new(1, 0))));
    }

    #[test]
    fn trivial_lift_passes() {
        let q = bipoly(&[(2, 2, 1), (3, 2, 1), (2, 3, 1), (4, 4, -3)]).to_param();
        let r = verify_hessian_gluing(&q).unwrap();
        assert_eq!(r.cells.len(), 1);
        assert!(r.pass && r.cells[0].eligible && r.cells[0].truncations_equal);
    }

    #[test]
    fn cells_outside_the_region_are_ineligible() {
        let q = bipoly(&[(1, 2, 1), (3, 2, 1), (2, 3, 1)]).to_param();
        let r = verify_hessian_gluing(&q).unwrap();
        assert!(!r.cells[0].eligible);
        assert!(r.pass);
    }

    #[test]
    fn d4_round_trip_and_gluing() {
        let l = complete_layout(&paper_layout(4, Mode::Literal).unwrap()).unwrap();
        let v = solve_heights(&l).unwrap();
        let q = assemble(&l, &v).unwrap();
        for p in &l.pieces {
            assert_eq!(truncate_on(&q, &Cell::full(p.cell.polygon.clone())).unwrap(), p.poly);
        }
        let r = verify_hessian_gluing(&q).unwrap();
        assert!(r.pass);
        assert_eq!(r.eligible_count(), 4);
    }
}
