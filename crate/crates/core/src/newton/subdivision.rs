use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::polygon::{cross, Point, Polygon};
use super::NewtonError;
use crate::ratpoly::{Exponent, ParamPoly, Rational};

/// Heights `ν(i, j)` on a finite set of lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lifting {
    heights: BTreeMap<Point, Rational>,
}

impl Lifting {
    pub fn new(heights: BTreeMap<Point, Rational>) -> Self {
        Lifting { heights }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Point, Rational)>>(pairs: I) -> Self {
        Lifting { heights: pairs.into_iter().collect() }
    }

    /// `ν(i, j)` = lowest power of `t` in the coefficient of `X^i Y^j`.
    pub fn from_param(p: &ParamPoly) -> Self {
        Lifting {
            heights: p
                .terms()
                .map(|(e, c)| {
                    let v = c.valuation().expect("stored coefficients are nonzero");
                    (exp_point(e), Rational::from_integer(v.into()))
                })
                .collect(),
        }
    }

    pub fn height(&self, p: Point) -> Option<&Rational> {
        self.heights.get(&p)
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.heights.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, &Rational)> + '_ {
        self.heights.iter().map(|(p, h)| (*p, h))
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }
}

pub(crate) fn exp_point(e: Exponent) -> Point {
    Point::new(e.i as i64, e.j as i64)
}

/// A face of the subdivision together with the lifted points lying on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub polygon: Polygon,
    pub dim: u8,
    /// Support points on the corresponding lower face, sorted.
    pub lattice_points: Vec<Point>,
}

impl Cell {
    pub fn new(polygon: Polygon, mut points: Vec<Point>) -> Cell {
        points.sort();
        points.dedup();
        let dim = polygon.dim();
        Cell { polygon, dim, lattice_points: points }
    }

    /// A cell whose points are all lattice points of the polygon.
    pub fn full(polygon: Polygon) -> Cell {
        let pts = polygon.lattice_points();
        Cell::new(polygon, pts)
    }
}

/// Regular subdivision of the projected support, cells of every dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    pub polygon: Polygon,
    /// 2-cells first, then 1-cells, then 0-cells; each group sorted.
    pub cells: Vec<Cell>,
}

impl Subdivision {
    pub fn cells_of_dim(&self, dim: u8) -> impl Iterator<Item = &Cell> + '_ {
        self.cells.iter().filter(move |c| c.dim == dim)
    }

    pub fn top_cells(&self) -> impl Iterator<Item = &Cell> + '_ {
        let top = self.polygon.dim();
        self.cells_of_dim(top)
    }

    pub fn find(&self, polygon: &Polygon) -> Option<&Cell> {
        self.cells.iter().find(|c| &c.polygon == polygon)
    }
}

/// Subdivision induced by the lower faces of `{(i, j, ν(i, j))}`.
pub fn lower_subdivision(p: &ParamPoly) -> Result<(Lifting, Subdivision), NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    let lifting = Lifting::from_param(p);
    let sub = subdivide(&lifting)?;
    Ok((lifting, sub))
}

#[derive(Clone, Copy)]
struct P3 {
    x: i128,
    y: i128,
    z: i128,
}

impl P3 {
    fn p2(&self) -> Point {
        Point::new(self.x as i64, self.y as i64)
    }
}

fn normal(a: P3, b: P3, c: P3) -> (i128, i128, i128) {
    let (ux, uy, uz) = (b.x - a.x, b.y - a.y, b.z - a.z);
    let (vx, vy, vz) = (c.x - a.x, c.y - a.y, c.z - a.z);
    (uy * vz - uz * vy, uz * vx - ux * vz, ux * vy - uy * vx)
}

fn side(n: (i128, i128, i128), a: P3, p: P3) -> i128 {
    n.0 * (p.x - a.x) + n.1 * (p.y - a.y) + n.2 * (p.z - a.z)
}

/// Integer-scaled lifted points: heights multiplied by a common denominator.
fn scaled_points(l: &Lifting) -> Result<Vec<P3>, NewtonError> {
    let mut den = BigInt::one();
    for (_, h) in l.iter() {
        den = den.lcm(h.denom());
    }
    l.iter()
        .map(|(p, h)| {
            let z = (h.numer() * (&den / h.denom())).to_i128().filter(|z| z.abs() < (1i128 << 80));
            let z = z.ok_or(NewtonError::HeightOverflow)?;
            Ok(P3 { x: p.x as i128, y: p.y as i128, z })
        })
        .collect()
}

/// Point of `pts` that, together with the lifted edge `a b`, spans the lowest
/// plane over the left side of `a → b`; `None` when no point lies there.
fn pivot(pts: &[P3], a: P3, b: P3) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, &p) in pts.iter().enumerate() {
        if cross(a.p2(), b.p2(), p.p2()) <= 0 {
            continue;
        }
        match best {
            None => best = Some(k),
            Some(c) => {
                if side(normal(a, b, pts[c]), a, p) < 0 {
                    best = Some(k);
                }
            }
        }
    }
    best
}

struct Face {
    members: Vec<usize>,
    polygon: Polygon,
}

fn face_through(pts: &[P3], a: P3, b: P3, c: P3) -> Result<Face, NewtonError> {
    let n = normal(a, b, c);
    let mut members = Vec::new();
    for (k, &p) in pts.iter().enumerate() {
        let s = side(n, a, p);
        if s < 0 {
            return Err(NewtonError::Internal("lower hull face has a point below it"));
        }
        if s == 0 {
            members.push(k);
        }
    }
    let polygon = Polygon::hull(members.iter().map(|&k| pts[k].p2())).expect("face has points");
    Ok(Face { members, polygon })
}

/// Lower-hull subdivision of a lifting, by gift wrapping over faces.
pub fn subdivide(l: &Lifting) -> Result<Subdivision, NewtonError> {
    let pts = scaled_points(l)?;
    let coords: Vec<Point> = pts.iter().map(P3::p2).collect();
    let ambient = Polygon::hull(coords.iter().copied()).ok_or(NewtonError::ZeroPolynomial)?;
    let index: BTreeMap<Point, usize> = coords.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let at = |p: Point| pts[index[&p]];

    if ambient.dim() < 2 {
        return Ok(collinear_subdivision(&pts, ambient));
    }

    let (h0, h1) = (ambient.vertices()[0], ambient.vertices()[1]);
    let chain = lower_chain(&pts, h0, h1);
    let (a, b) = (pts[chain[0]], pts[chain[1]]);
    let c = pivot(&pts, a, b).ok_or(NewtonError::Internal("no face above a boundary edge"))?;
    let first = face_through(&pts, a, b, pts[c])?;

    let mut faces: Vec<Face> = Vec::new();
    let mut seen: BTreeSet<Polygon> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(first.polygon.clone());
    queue.push_back(first);
    while let Some(face) = queue.pop_front() {
        for (u, v) in face.polygon.edges() {
            let (pu, pv) = (at(u), at(v));
            let Some(c) = pivot(&pts, pv, pu) else {
                continue;
            };
            let next = face_through(&pts, pv, pu, pts[c])?;
            if seen.insert(next.polygon.clone()) {
                queue.push_back(next);
            }
        }
        faces.push(face);
    }

    let mut twos = Vec::new();
    let mut ones: BTreeMap<(Point, Point), Cell> = BTreeMap::new();
    let mut zeros: BTreeSet<Point> = BTreeSet::new();
    for f in &faces {
        let members: Vec<Point> = f.members.iter().map(|&k| coords[k]).collect();
        for (u, v) in f.polygon.edges() {
            let key = if u < v { (u, v) } else { (v, u) };
            ones.entry(key).or_insert_with(|| {
                let seg = Polygon::hull([u, v]).unwrap();
                let on: Vec<Point> = members.iter().copied().filter(|&p| seg.contains(p)).collect();
                Cell::new(seg, on)
            });
            zeros.insert(u);
        }
        twos.push(Cell::new(f.polygon.clone(), members));
    }
    twos.sort();
    let mut cells = twos;
    cells.extend(ones.into_values());
    cells.extend(zeros.into_iter().map(|p| Cell::new(Polygon::point(p), vec![p])));
    Ok(Subdivision { polygon: ambient, cells })
}

/// Indices of the strict lower chain of the lifted points on segment `p q`,
/// ordered from `p` to `q`.
fn lower_chain(pts: &[P3], p: Point, q: Point) -> Vec<usize> {
    let dir = q.sub(p);
    let mut on: Vec<(i128, i128, usize)> = pts
        .iter()
        .enumerate()
        .filter(|(_, r)| cross(p, q, r.p2()) == 0)
        .map(|(k, r)| {
            let t = (r.x - p.x as i128) * dir.x as i128 + (r.y - p.y as i128) * dir.y as i128;
            (t, r.z, k)
        })
        .filter(|&(t, _, _)| {
            let len2 = (dir.x as i128).pow(2) + (dir.y as i128).pow(2);
            t >= 0 && t <= len2
        })
        .collect();
    on.sort();
    let mut chain: Vec<(i128, i128, usize)> = Vec::new();
    for r in on {
        while chain.len() >= 2 {
            let (a, b) = (chain[chain.len() - 2], chain[chain.len() - 1]);
            // Pop `b` unless it lies strictly below segment a → r.
            let turn = (b.0 - a.0) * (r.1 - a.1) - (b.1 - a.1) * (r.0 - a.0);
            if turn <= 0 {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(r);
    }
    chain.into_iter().map(|(_, _, k)| k).collect()
}

fn collinear_subdivision(pts: &[P3], ambient: Polygon) -> Subdivision {
    let v = ambient.vertices();
    if v.len() == 1 {
        let p = v[0];
        return Subdivision { polygon: ambient.clone(), cells: vec![Cell::new(ambient, vec![p])] };
    }
    let chain = lower_chain(pts, v[0], v[1]);
    let mut ones = Vec::new();
    let mut zeros = Vec::new();
    for w in chain.windows(2) {
        let (a, b) = (pts[w[0]], pts[w[1]]);
        let seg = Polygon::hull([a.p2(), b.p2()]).unwrap();
        let on: Vec<Point> = pts
            .iter()
            .filter(|r| {
                seg.contains(r.p2()) && {
                    let (dx, dy, dz) = (b.x - a.x, b.y - a.y, b.z - a.z);
                    let len2 = dx * dx + dy * dy;
                    let t = (r.x - a.x) * dx + (r.y - a.y) * dy;
                    (r.z - a.z) * len2 == dz * t
                }
            })
            .map(P3::p2)
            .collect();
        ones.push(Cell::new(seg, on));
    }
    for &k in &chain {
        zeros.push(Cell::new(Polygon::point(pts[k].p2()), vec![pts[k].p2()]));
    }
    ones.sort();
    zeros.sort();
    ones.extend(zeros);
    Subdivision { polygon: ambient, cells: ones }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, TPoly};

    pub(crate) fn param(terms: &[(u32, u32, u32)]) -> ParamPoly {
        ParamPoly::from_terms(terms.iter().map(|&(i, j, k)| (Exponent::new(i, j), TPoly::monomial(k, int(1)))))
    }

    fn tri(pts: &[(i64, i64)]) -> Polygon {
        Polygon::hull(pts.iter().map(|&p| p.into())).unwrap()
    }

    #[test]
    fn square_splits_into_two_triangles() {
        let (_, sub) = lower_subdivision(&param(&[(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)])).unwrap();
        let twos: Vec<&Polygon> = sub.cells_of_dim(2).map(|c| &c.polygon).collect();
        assert_eq!(twos, vec![&tri(&[(0, 0), (1, 0), (0, 1)]), &tri(&[(1, 0), (1, 1), (0, 1)])]);
        assert_eq!(sub.cells_of_dim(1).count(), 5);
        assert_eq!(sub.cells_of_dim(0).count(), 4);
    }

    #[test]
    fn constant_heights_give_trivial_subdivision() {
        let p = param(&[(0, 0, 0), (2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 0)]);
        let (_, sub) = lower_subdivision(&p).unwrap();
        let twos: Vec<&Cell> = sub.cells_of_dim(2).collect();
        assert_eq!(twos.len(), 1);
        assert_eq!(twos[0].polygon, sub.polygon);
        assert_eq!(twos[0].lattice_points.len(), 5);
    }

    #[test]
    fn segment_support() {
        let (_, sub) = lower_subdivision(&param(&[(1, 0, 0), (0, 1, 1)])).unwrap();
        assert_eq!(sub.polygon.dim(), 1);
        let ones: Vec<&Cell> = sub.cells_of_dim(1).collect();
        assert_eq!(ones.len(), 1);
        assert_eq!(ones[0].polygon, sub.polygon);
    }

    #[test]
    fn raised_interior_point_is_not_on_any_face() {
        let p = param(&[(0, 0, 0), (2, 0, 0), (0, 2, 0), (1, 1, 3), (1, 0, 0), (0, 1, 0)]);
        let (_, sub) = lower_subdivision(&p).unwrap();
        assert!(sub.cells.iter().all(|c| !c.lattice_points.contains(&Point::new(1, 1))));
        assert_eq!(sub.cells_of_dim(2).count(), 1);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(lower_subdivision(&ParamPoly::zero()).unwrap_err(), NewtonError::ZeroPolynomial);
    }
}
