use num_traits::{Signed, Zero};

use super::polygon::{Point, Polygon};
use super::subdivision::{Cell, Lifting};
use super::NewtonError;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::ratpoly::{BiPoly, Exponent, ParamPoly, Rational};

/// `L(i, j) = α·i + β·j + γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineSupport {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl AffineSupport {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational) -> Self {
        AffineSupport { alpha, beta, gamma }
    }

    pub fn at(&self, p: Point) -> Rational {
        &self.alpha * Rational::from_integer(p.x.into()) + &self.beta * Rational::from_integer(p.y.into()) + &self.gamma
    }
}

/// `L = ν` exactly on the cell's points and `L < ν` on every other lifted
/// point, and the cell polygon is the hull of its points.
pub fn is_valid_support(l: &Lifting, c: &Cell, s: &AffineSupport) -> bool {
    if c.lattice_points.is_empty() || Polygon::hull(c.lattice_points.iter().copied()).as_ref() != Some(&c.polygon) {
        return false;
    }
    let mut on = 0;
    for (p, h) in l.iter() {
        let v = s.at(p);
        let member = c.lattice_points.binary_search(&p).is_ok();
        match (member, v.cmp(h)) {
            (true, std::cmp::Ordering::Equal) => on += 1,
            (false, std::cmp::Ordering::Less) => {}
            _ => return false,
        }
    }
    on == c.lattice_points.len()
}

fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Plane through three non-collinear lifted points.
fn plane(l: &Lifting, v: [Point; 3]) -> Option<AffineSupport> {
    let h: Vec<&Rational> = v.iter().map(|p| l.height(*p)).collect::<Option<_>>()?;
    let (x1, y1) = (r(v[1].x - v[0].x), r(v[1].y - v[0].y));
    let (x2, y2) = (r(v[2].x - v[0].x), r(v[2].y - v[0].y));
    let (z1, z2) = (h[1] - h[0], h[2] - h[0]);
    let det = &x1 * &y2 - &x2 * &y1;
    if det.is_zero() {
        return None;
    }
    let alpha = (&z1 * &y2 - &z2 * &y1) / &det;
    let beta = (&x1 * &z2 - &x2 * &z1) / &det;
    let gamma = h[0] - &alpha * r(v[0].x) - &beta * r(v[0].y);
    Some(AffineSupport::new(alpha, beta, gamma))
}

// LP variable layout for the lower-dimensional case. Free variables are
// split into nonnegative parts.
const AP: usize = 0;
const AN: usize = 1;
const BP: usize = 2;
const BN: usize = 3;
const GP: usize = 4;
const GN: usize = 5;
const M: usize = 6;
const SA: usize = 7;
const SB: usize = 8;

fn affine_row(p: Point) -> Vec<(usize, Rational)> {
    vec![(AP, r(p.x)), (AN, r(-p.x)), (BP, r(p.y)), (BN, r(-p.y)), (GP, r(1)), (GN, r(-1))]
}

fn minimize(lp: &mut LinearProgram, objective: &[(usize, i64)]) -> Option<Rational> {
    for k in 0..lp.num_vars() {
        lp.set_objective(k, Rational::zero());
    }
    for &(k, c) in objective {
        lp.set_objective(k, r(c));
    }
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => {
            let coeffs = objective.iter().map(|&(k, c)| (k, r(c))).collect();
            lp.add(coeffs, Relation::Eq, value.clone());
            Some(value)
        }
        _ => None,
    }
}

/// Supporting affine function of a cell of the subdivision induced by `l`.
///
/// Two-dimensional cells have exactly one. For lower-dimensional cells the
/// strictness margin (capped at 1) is maximized first, then `(|α|, α, |β|, β)`
/// is minimized lexicographically.
pub fn support_for_cell(l: &Lifting, c: &Cell) -> Result<AffineSupport, NewtonError> {
    if c.lattice_points.iter().any(|p| l.height(*p).is_none()) {
        return Err(NewtonError::NotACell);
    }
    let s = if c.dim == 2 {
        let v = c.polygon.vertices();
        plane(l, [v[0], v[1], v[2]]).ok_or(NewtonError::NotACell)?
    } else {
        lower_dim_support(l, c)?
    };
    if is_valid_support(l, c, &s) {
        Ok(s)
    } else {
        Err(NewtonError::NotACell)
    }
}

fn lower_dim_support(l: &Lifting, c: &Cell) -> Result<AffineSupport, NewtonError> {
    let mut lp = LinearProgram::new(9);
    for &p in &c.lattice_points {
        lp.add(affine_row(p), Relation::Eq, l.height(p).unwrap().clone());
    }
    for (q, h) in l.iter() {
        if c.lattice_points.binary_search(&q).is_err() {
            let mut row = affine_row(q);
            row.push((M, r(1)));
            lp.add(row, Relation::Le, h.clone());
        }
    }
    lp.add(vec![(M, r(1))], Relation::Le, r(1));
    lp.add(vec![(SA, r(1)), (AP, r(-1)), (AN, r(1))], Relation::Ge, Rational::zero());
    lp.add(vec![(SA, r(1)), (AP, r(1)), (AN, r(-1))], Relation::Ge, Rational::zero());
    lp.add(vec![(SB, r(1)), (BP, r(-1)), (BN, r(1))], Relation::Ge, Rational::zero());
    lp.add(vec![(SB, r(1)), (BP, r(1)), (BN, r(-1))], Relation::Ge, Rational::zero());

    let margin = -minimize(&mut lp, &[(M, -1)]).ok_or(NewtonError::NotACell)?;
    if margin.is_zero() && l.len() > c.lattice_points.len() {
        return Err(NewtonError::NotACell);
    }
    let alpha_abs = minimize(&mut lp, &[(SA, 1)]).ok_or(NewtonError::Internal("support stage |α|"))?;
    let alpha = minimize(&mut lp, &[(AP, 1), (AN, -1)]).ok_or(NewtonError::Internal("support stage α"))?;
    minimize(&mut lp, &[(SB, 1)]).ok_or(NewtonError::Internal("support stage |β|"))?;
    let beta = minimize(&mut lp, &[(BP, 1), (BN, -1)]).ok_or(NewtonError::Internal("support stage β"))?;
    debug_assert!(alpha.abs() == alpha_abs);
    let p0 = c.lattice_points[0];
    let gamma = l.height(p0).unwrap() - &alpha * r(p0.x) - &beta * r(p0.y);
    Ok(AffineSupport::new(alpha, beta, gamma))
}

/// The `t⁰` part of `t^{-γ} P(t^{-α}X, t^{-β}Y)`: for each point of the cell,
/// the coefficient of `t^{L(i,j)}` in `a_{i,j}(t)`.
pub fn truncate(p: &ParamPoly, c: &Cell, s: &AffineSupport) -> Result<BiPoly, NewtonError> {
    let l = Lifting::from_param(p);
    if !is_valid_support(&l, c, s) {
        return Err(NewtonError::InvalidSupport);
    }
    let mut out = BiPoly::zero();
    for &q in &c.lattice_points {
        let e = Exponent::new(q.x as u32, q.y as u32);
        let k = s.at(q);
        debug_assert!(k.is_integer());
        let k: u32 = k.to_integer().try_into().map_err(|_| NewtonError::InvalidSupport)?;
        out.add_term(e, p.coeff(e).expect("cell points are in the support").coeff(k));
    }
    Ok(out)
}

/// Truncation on a cell using its canonical support.
pub fn truncate_on(p: &ParamPoly, c: &Cell) -> Result<BiPoly, NewtonError> {
    let s = support_for_cell(&Lifting::from_param(p), c)?;
    truncate(p, c, &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::lower_subdivision;
    use crate::ratpoly::{int, TPoly};

    fn param(terms: &[(u32, u32, u32)]) -> ParamPoly {
        ParamPoly::from_terms(terms.iter().map(|&(i, j, k)| (Exponent::new(i, j), TPoly::monomial(k, int(1)))))
    }

    fn cell_with(sub: &crate::newton::Subdivision, pts: &[(i64, i64)]) -> Cell {
        let poly = Polygon::hull(pts.iter().map(|&p| p.into())).unwrap();
        sub.find(&poly).unwrap().clone()
    }

    fn sup(a: i64, b: i64, g: i64) -> AffineSupport {
        AffineSupport::new(int(a), int(b), int(g))
    }

    #[test]
    fn square_supports() {
        let p = param(&[(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)]);
        let (l, sub) = lower_subdivision(&p).unwrap();
        let lower = cell_with(&sub, &[(0, 0), (1, 0), (0, 1)]);
        let upper = cell_with(&sub, &[(1, 0), (0, 1), (1, 1)]);
        assert_eq!(support_for_cell(&l, &lower).unwrap(), sup(0, 0, 0));
        assert_eq!(support_for_cell(&l, &upper).unwrap(), sup(1, 1, -1));
        assert_eq!(truncate_on(&p, &upper).unwrap(), crate::ratpoly::bipoly(&[(1, 0, 1), (0, 1, 1), (1, 1, 1)]));
    }

    #[test]
    fn edge_support_is_canonical() {
        let p = param(&[(1, 0, 0), (0, 1, 1)]);
        let (l, sub) = lower_subdivision(&p).unwrap();
        let edge = sub.cells_of_dim(1).next().unwrap().clone();
        let s = support_for_cell(&l, &edge).unwrap();
        assert_eq!(s, sup(0, 1, 0));
        assert_eq!(truncate(&p, &edge, &s).unwrap(), crate::ratpoly::bipoly(&[(1, 0, 1), (0, 1, 1)]));
    }

    #[test]
    fn interior_edge_supports_are_interchangeable() {
        let p = param(&[(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)]);
        let (l, sub) = lower_subdivision(&p).unwrap();
        let diag = cell_with(&sub, &[(1, 0), (0, 1)]);
        let canonical = support_for_cell(&l, &diag).unwrap();
        assert!(is_valid_support(&l, &diag, &canonical));
        let other =
            AffineSupport::new(crate::ratpoly::rat(1, 3), crate::ratpoly::rat(1, 3), crate::ratpoly::rat(-1, 3));
        assert!(is_valid_support(&l, &diag, &other));
        assert_eq!(truncate(&p, &diag, &canonical).unwrap(), truncate(&p, &diag, &other).unwrap());
    }

    #[test]
    fn trivial_lift_truncates_to_itself() {
        let q = crate::ratpoly::bipoly(&[(0, 0, 3), (2, 0, -1), (1, 1, 5), (0, 2, 2)]);
        let p = q.to_param();
        let (_, sub) = lower_subdivision(&p).unwrap();
        let whole = sub.cells_of_dim(2).next().unwrap();
        assert_eq!(truncate_on(&p, whole).unwrap(), q);
    }

    #[test]
    fn rejects_non_cells_and_bad_supports() {
        let p = param(&[(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)]);
        let (l, _) = lower_subdivision(&p).unwrap();
        let bogus = Cell::full(Polygon::hull([Point::new(0, 0), Point::new(1, 1), Point::new(1, 0)]).unwrap());
        assert_eq!(support_for_cell(&l, &bogus), Err(NewtonError::NotACell));
        let lower = Cell::full(Polygon::hull([Point::new(0, 0), Point::new(1, 0), Point::new(0, 1)]).unwrap());
        assert_eq!(truncate(&p, &lower, &sup(1, 1, -1)), Err(NewtonError::InvalidSupport));
    }
}
