use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::layout::Layout;
use super::PatchworkError;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::newton::{cross, subdivide, Lifting, Point, Polygon};
use crate::ratpoly::Rational;

fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Affine coordinates of `w` in the frame `v0, v1, v2`.
fn barycentric(v: [Point; 3], w: Point) -> [Rational; 3] {
    let det = r(cross(v[0], v[1], v[2]) as i64);
    let a = r(cross(v[0], w, v[2]) as i64) / &det;
    let b = r(cross(v[0], v[1], w) as i64) / &det;
    [Rational::one() - &a - &b, a, b]
}

/// Coefficients of `α` and `β` of the plane through the lifted `v0, v1, v2`
/// as linear forms in the three heights.
fn slope_forms(v: [Point; 3]) -> ([Rational; 3], [Rational; 3]) {
    let (x1, y1) = (v[1].x - v[0].x, v[1].y - v[0].y);
    let (x2, y2) = (v[2].x - v[0].x, v[2].y - v[0].y);
    let det = r(x1 * y2 - x2 * y1);
    let alpha = [r(y1 - y2) / &det, r(y2) / &det, r(-y1) / &det];
    let beta = [r(x2 - x1) / &det, r(-x2) / &det, r(x1) / &det];
    (alpha, beta)
}

fn frame(p: &Polygon) -> [Point; 3] {
    let v = p.vertices();
    [v[0], v[1], v[2]]
}

/// Integer heights `ν ≥ 0` on every lattice point of the ambient polygon
/// whose lower hull is exactly the layout's cells.
///
/// The program asks for a margin of at least 1 across every interior edge
/// and minimises the largest slope `max(|α|, |β|)` over the cells, then the
/// sum of heights. The rational optimum is scaled to integers and checked
/// by recomputing the subdivision.
pub fn solve_heights(l: &Layout) -> Result<Lifting, PatchworkError> {
    let ambient = l.ambient().ok_or(PatchworkError::EmptyLayout)?;
    let points = ambient.lattice_points();
    let index: BTreeMap<Point, usize> = points.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let cells: Vec<&Polygon> = l.pieces.iter().map(|p| &p.cell.polygon).filter(|p| p.dim() == 2).collect();
    if cells.is_empty() {
        return Ok(Lifting::from_pairs(points.iter().map(|p| (*p, Rational::zero()))));
    }
    let covered: BTreeSet<Point> = l.pieces.iter().flat_map(|p| p.cell.lattice_points.iter().copied()).collect();
    if covered.len() != points.len() {
        return Err(PatchworkError::Completion("layout does not cover every lattice point".into()));
    }

    let s = points.len();
    let mut lp = LinearProgram::new(s + 1);
    let h = |p: Point| index[&p];

    for c in &cells {
        let f = frame(c);
        for q in c.lattice_points() {
            if f.contains(&q) {
                continue;
            }
            let lam = barycentric(f, q);
            let mut row = vec![(h(q), r(1))];
            row.extend(f.iter().zip(lam).map(|(v, a)| (h(*v), -a)));
            lp.add(row, Relation::Eq, Rational::zero());
        }
        let (fa, fb) = slope_forms(f);
        for form in [fa, fb] {
            for sign in [1, -1] {
                let mut row: Vec<(usize, Rational)> = f.iter().zip(&form).map(|(v, a)| (h(*v), a * r(sign))).collect();
                row.push((s, r(-1)));
                lp.add(row, Relation::Le, Rational::zero());
            }
        }
    }

    // Interior edges: the far side of each neighbour lies at least 1 above
    // the plane of the cell.
    let mut owner: BTreeMap<(Point, Point), usize> = BTreeMap::new();
    for (k, c) in cells.iter().enumerate() {
        for (u, v) in c.edges() {
            owner.insert((u, v), k);
        }
    }
    let mut margin_rows: BTreeMap<usize, (Point, Point)> = BTreeMap::new();
    for (&(u, v), &k) in &owner {
        let Some(&m) = owner.get(&(v, u)) else {
            continue;
        };
        if u > v {
            continue;
        }
        let f = frame(cells[k]);
        let w = cells[m].vertices().iter().copied().find(|&w| cross(u, v, w) != 0).expect("2-cell");
        let lam = barycentric(f, w);
        let mut row = vec![(h(w), r(1))];
        row.extend(f.iter().zip(lam).map(|(p, a)| (h(*p), -a)));
        let idx = lp.add(row, Relation::Ge, r(1));
        margin_rows.insert(idx, (u, v));
    }

    let certificate = |violated: Vec<usize>| {
        let mut edges: Vec<(Point, Point)> = violated.iter().filter_map(|i| margin_rows.get(i).copied()).collect();
        if edges.is_empty() {
            edges = margin_rows.values().copied().collect();
        }
        PatchworkError::Infeasible { edges }
    };

    lp.set_objective(s, r(1));
    let slope = match lp.solve() {
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Infeasible { violated } => return Err(certificate(violated)),
        LpOutcome::Unbounded => return Err(PatchworkError::Internal("slope program unbounded")),
    };
    lp.add(vec![(s, r(1))], Relation::Eq, slope);
    lp.set_objective(s, Rational::zero());
    for k in 0..s {
        lp.set_objective(k, r(1));
    }
    let x = match lp.solve() {
        LpOutcome::Optimal { x, .. } => x,
        LpOutcome::Infeasible { violated } => return Err(certificate(violated)),
        LpOutcome::Unbounded => return Err(PatchworkError::Internal("height program unbounded")),
    };

    let mut den = BigInt::one();
    for v in &x[..s] {
        den = den.lcm(v.denom());
    }
    let scaled: Vec<BigInt> = x[..s].iter().map(|v| v.numer() * (&den / v.denom())).collect();
    let low = scaled.iter().min().cloned().unwrap_or_default();
    let lifting = Lifting::from_pairs(points.iter().zip(&scaled).map(|(p, v)| (*p, Rational::from_integer(v - &low))));

    let sub = subdivide(&lifting)?;
    let got: BTreeSet<Polygon> = sub.cells_of_dim(2).map(|c| c.polygon.clone()).collect();
    let want: BTreeSet<Polygon> = cells.iter().map(|c| (*c).clone()).collect();
    let full = sub.cells_of_dim(2).all(|c| c.lattice_points == c.polygon.lattice_points());
    if got != want || !full {
        return Err(PatchworkError::RecheckFailed);
    }
    Ok(lifting)
}

/// `max(|α|, |β|)` over the 2-cells, with the supports of the lifting.
pub fn max_slope(l: &Lifting, cells: &[Polygon]) -> Rational {
    let mut best = Rational::zero();
    for c in cells.iter().filter(|c| c.dim() == 2) {
        let f = frame(c);
        let (fa, fb) = slope_forms(f);
        for form in [fa, fb] {
            let v: Rational = f.iter().zip(&form).map(|(p, a)| a * l.height(*p).cloned().unwrap_or_default()).sum();
            let v = if v < Rational::zero() { -v } else { v };
            if v > best {
                best = v;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patchwork::layout::{complete_layout, paper_layout, Mode, Piece};

    fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Polygon {
        Polygon::hull([a.into(), b.into(), c.into()]).unwrap()
    }

    #[test]
    fn unit_square() {
        let l = Layout {
            d: 4,
            mode: Mode::Literal,
            pieces: vec![Piece::filler(tri((0, 0), (1, 0), (0, 1))), Piece::filler(tri((1, 0), (1, 1), (0, 1)))],
        };
        let h = solve_heights(&l).unwrap();
        let v: Vec<Rational> =
            [(0, 0), (1, 0), (0, 1), (1, 1)].iter().map(|&p| h.height(p.into()).unwrap().clone()).collect();
        // Affinely equivalent to (0, 0, 0, 1): the fold across the diagonal is positive.
        assert!(&v[3] + &v[0] - &v[1] - &v[2] > Rational::zero());
    }

    #[test]
    fn single_cell_is_flat() {
        let l = Layout { d: 4, mode: Mode::Literal, pieces: vec![Piece::filler(tri((0, 0), (2, 0), (0, 2)))] };
        let h = solve_heights(&l).unwrap();
        assert!(h.iter().all(|(_, v)| v.is_zero()));
        assert_eq!(h.len(), 6);
    }

    #[test]
    fn literal_layouts_are_regular() {
        for d in 4..=6 {
            let l = complete_layout(&paper_layout(d, Mode::Literal).unwrap()).unwrap();
            let h = solve_heights(&l).unwrap();
            assert!(h.iter().all(|(_, v)| v.is_integer() && *v >= Rational::zero()));
        }
    }

    #[test]
    fn non_regular_layout_is_infeasible() {
        let l = crate::patchwork::twisted_layout();
        match solve_heights(&l) {
            Err(PatchworkError::Infeasible { edges }) => assert!(!edges.is_empty()),
            other => panic!("{other:?}"),
        }
    }
}
