use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::PatchworkError;
use crate::newton::{cross, newton_polygon, subdivision_svg, Cell, Lifting, Point, Polygon, Subdivision};
use crate::ratpoly::json::{bipoly_value, parse_bipoly};
use crate::ratpoly::{BiPoly, Exponent, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PieceKind {
    T1,
    T2,
    #[serde(rename = "STRIP")]
    Strip,
    #[serde(rename = "FILLER")]
    Filler,
}

impl PieceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PieceKind::T1 => "T1",
            PieceKind::T2 => "T2",
            PieceKind::Strip => "STRIP",
            PieceKind::Filler => "FILLER",
        }
    }

    /// Fill colour in subdivision renders.
    pub fn fill(self) -> &'static str {
        match self {
            PieceKind::T1 => "#f4b6b6",
            PieceKind::T2 => "#b6d4f4",
            PieceKind::Strip => "#c9e8b8",
            PieceKind::Filler => "#eeeeee",
        }
    }

    pub fn parse(s: &str) -> Option<PieceKind> {
        Some(match s {
            "T1" => PieceKind::T1,
            "T2" => PieceKind::T2,
            "STRIP" => PieceKind::Strip,
            "FILLER" => PieceKind::Filler,
            _ => return None,
        })
    }
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Literal,
    Simplex,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Literal => "literal",
            Mode::Simplex => "simplex",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "literal" => Ok(Mode::Literal),
            "simplex" => Ok(Mode::Simplex),
            other => Err(format!("unknown mode {other:?}; expected literal or simplex")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub kind: PieceKind,
    pub cell: Cell,
    pub poly: BiPoly,
}

impl Piece {
    /// Checks that the polynomial's support is exactly the cell's lattice
    /// points.
    pub fn new(kind: PieceKind, poly: BiPoly) -> Result<Piece, PatchworkError> {
        let polygon = newton_polygon(&poly)?;
        let cell = Cell::full(polygon);
        let support: Vec<Point> = poly.support().map(|e| Point::new(e.i as i64, e.j as i64)).collect();
        if support != cell.lattice_points {
            return Err(PatchworkError::PieceSupport(cell.polygon.to_string()));
        }
        Ok(Piece { kind, cell, poly })
    }

    /// The all-ones polynomial on a lattice polygon.
    pub fn filler(polygon: Polygon) -> Piece {
        let cell = Cell::full(polygon);
        let poly = BiPoly::from_terms(
            cell.lattice_points
                .iter()
                .map(|p| (Exponent::new(p.x as u32, p.y as u32), Rational::from_integer(1.into()))),
        );
        Piece { kind: PieceKind::Filler, cell, poly }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub d: u32,
    pub mode: Mode,
    pub pieces: Vec<Piece>,
}

impl Layout {
    /// Convex hull of all piece cells, joined in simplex mode with the
    /// triangle `x, y ≥ 0, x + y ≤ d`; `None` for an empty literal layout.
    pub fn ambient(&self) -> Option<Polygon> {
        let cells = self.pieces.iter().flat_map(|p| p.cell.polygon.vertices().iter().copied());
        match self.mode {
            Mode::Literal => Polygon::hull(cells),
            Mode::Simplex => {
                let d = self.d as i64;
                Polygon::hull(cells.chain([Point::new(0, 0), Point::new(d, 0), Point::new(0, d)]))
            }
        }
    }

    /// The subdivision with each layout cell filled by its piece kind.
    pub fn svg(&self, lifting: &Lifting, sub: &Subdivision) -> String {
        let kind_of = |c: &Polygon| self.pieces.iter().find(|p| &p.cell.polygon == c).map(|p| p.kind.fill());
        subdivision_svg(sub, lifting, &kind_of)
    }

    pub fn non_filler_count(&self) -> usize {
        self.pieces.iter().filter(|p| p.kind != PieceKind::Filler).count()
    }

    pub fn cells(&self) -> BTreeSet<Polygon> {
        self.pieces.iter().map(|p| p.cell.polygon.clone()).collect()
    }

    pub fn to_value(&self) -> Value {
        json!({
            "d": self.d,
            "mode": self.mode.as_str(),
            "pieces": self.pieces.iter().map(|p| json!({
                "kind": p.kind.as_str(),
                "cell": p.cell.polygon.vertices().iter().map(|v| json!([v.x, v.y])).collect::<Vec<_>>(),
                "poly": bipoly_value(&p.poly),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }

    pub fn from_json(text: &str) -> Result<Layout, PatchworkError> {
        #[derive(Deserialize)]
        struct PieceDoc {
            kind: String,
            cell: Vec<[i64; 2]>,
            poly: Value,
        }
        #[derive(Deserialize)]
        struct Doc {
            d: u32,
            mode: Mode,
            pieces: Vec<PieceDoc>,
        }
        let bad = |m: String| PatchworkError::LayoutFormat(m);
        let doc: Doc = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let mut pieces = Vec::new();
        for p in doc.pieces {
            let kind = PieceKind::parse(&p.kind).ok_or_else(|| bad(format!("unknown piece kind {:?}", p.kind)))?;
            let poly = parse_bipoly(&p.poly.to_string()).map_err(|e| bad(e.to_string()))?;
            let piece = Piece::new(kind, poly)?;
            let cell = Polygon::hull(p.cell.iter().map(|&[x, y]| Point::new(x, y)));
            if cell.as_ref() != Some(&piece.cell.polygon) {
                return Err(bad(format!("cell of piece {} does not match its polynomial", piece.cell.polygon)));
            }
            pieces.push(piece);
        }
        Ok(Layout { d: doc.d, mode: doc.mode, pieces })
    }
}

fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Polygon {
    Polygon::hull([a.into(), b.into(), c.into()]).expect("nonempty")
}

fn shifted(base: &[(u32, u32)], i: u32, j: u32) -> BiPoly {
    BiPoly::from_terms(base.iter().map(|&(a, b)| (Exponent::new(a + i, b + j), Rational::from_integer(1.into()))))
}

/// The three piece families: `X^iY^j(X+Y+Y²)`, `X^iY^j(XY+X+Y²)` for
/// `2 ≤ i, j ≤ d−2` and `X^kY²(1+X+Y)` for `2 ≤ k ≤ d−1`. Simplex mode keeps
/// the cells inside `x + y ≤ d`.
pub fn paper_layout(d: u32, mode: Mode) -> Result<Layout, PatchworkError> {
    if d < 4 {
        return Err(PatchworkError::DegreeTooSmall(d));
    }
    let mut pieces = Vec::new();
    let make = |kind, poly: BiPoly, cell: Polygon| {
        let piece = Piece::new(kind, poly).expect("family pieces are well formed");
        debug_assert_eq!(piece.cell.polygon, cell);
        piece
    };
    for i in 2..=d - 2 {
        for j in 2..=d - 2 {
            let (x, y) = (i as i64, j as i64);
            pieces.push(make(
                PieceKind::T1,
                shifted(&[(1, 0), (0, 1), (0, 2)], i, j),
                tri((x + 1, y), (x, y + 1), (x, y + 2)),
            ));
            pieces.push(make(
                PieceKind::T2,
                shifted(&[(1, 1), (1, 0), (0, 2)], i, j),
                tri((x + 1, y + 1), (x + 1, y), (x, y + 2)),
            ));
        }
    }
    for k in 2..=d - 1 {
        let x = k as i64;
        pieces.push(make(PieceKind::Strip, shifted(&[(0, 0), (1, 0), (0, 1)], k, 2), tri((x, 2), (x + 1, 2), (x, 3))));
    }
    if mode == Mode::Simplex {
        pieces.retain(|p| p.cell.polygon.vertices().iter().all(|v| v.x + v.y <= d as i64));
    }
    Ok(Layout { d, mode, pieces })
}

/// Whether two convex polygons share interior points.
pub fn interiors_overlap(a: &Polygon, b: &Polygon) -> bool {
    if a.dim() < 2 || b.dim() < 2 {
        return false;
    }
    let separated_by =
        |p: &Polygon, q: &Polygon| p.edges().iter().any(|&(u, v)| q.vertices().iter().all(|&w| cross(u, v, w) <= 0));
    !(separated_by(a, b) || separated_by(b, a))
}

fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = cross(a, b, c).signum();
    let d2 = cross(a, b, d).signum();
    let d3 = cross(c, d, a).signum();
    let d4 = cross(c, d, b).signum();
    d1 * d2 < 0 && d3 * d4 < 0
}

/// Triangulates the part of the ambient hull not covered by pieces with
/// unimodular lattice triangles and appends them as all-ones fillers.
///
/// The triangulation is the greedy one: primitive segments between lattice
/// points are accepted shortest first whenever they cross neither an
/// accepted segment nor a piece interior.
pub fn complete_layout(l: &Layout) -> Result<Layout, PatchworkError> {
    for (a, pa) in l.pieces.iter().enumerate() {
        for pb in &l.pieces[a + 1..] {
            if interiors_overlap(&pa.cell.polygon, &pb.cell.polygon) {
                return Err(PatchworkError::Overlap(pa.cell.polygon.to_string(), pb.cell.polygon.to_string()));
            }
        }
    }
    let Some(ambient) = l.ambient() else {
        return Ok(l.clone());
    };
    if ambient.dim() < 2 {
        return Ok(l.clone());
    }
    let points = ambient.lattice_points();
    let mut accepted: BTreeSet<(Point, Point)> = BTreeSet::new();
    let key = |u: Point, v: Point| if u < v { (u, v) } else { (v, u) };
    for p in &l.pieces {
        for (u, v) in p.cell.polygon.edges() {
            accepted.insert(key(u, v));
        }
    }
    let mut candidates: Vec<(i64, Point, Point)> = Vec::new();
    for (a, &u) in points.iter().enumerate() {
        for &v in &points[a + 1..] {
            let d = v.sub(u);
            if d.x.gcd(&d.y) != 1 {
                continue;
            }
            candidates.push((d.x * d.x + d.y * d.y, u, v));
        }
    }
    candidates.sort();
    let mut edges: Vec<(Point, Point)> = accepted.iter().copied().collect();
    for (_, u, v) in candidates {
        if accepted.contains(&(u, v)) {
            continue;
        }
        if edges.iter().any(|&(a, b)| segments_cross(u, v, a, b)) {
            continue;
        }
        let mid2 = u.add(v);
        if l.pieces.iter().any(|p| p.cell.polygon.dim() == 2 && contains_interior_doubled(&p.cell.polygon, mid2)) {
            continue;
        }
        accepted.insert((u, v));
        edges.push((u, v));
    }

    let existing = l.cells();
    let mut fillers = BTreeSet::new();
    for &(u, v) in &accepted {
        for &w in &points {
            if w <= v || cross(u, v, w).abs() != 1 {
                continue;
            }
            if accepted.contains(&key(u, w)) && accepted.contains(&key(v, w)) {
                let t = Polygon::hull([u, v, w]).unwrap();
                if !existing.contains(&t) {
                    fillers.insert(t);
                }
            }
        }
    }
    let mut out = l.clone();
    out.pieces.extend(fillers.into_iter().map(Piece::filler));
    let covered: i128 = out.pieces.iter().map(|p| p.cell.polygon.twice_area()).sum();
    if covered != ambient.twice_area() {
        return Err(PatchworkError::Completion(format!(
            "cells cover twice-area {covered} of {}",
            ambient.twice_area()
        )));
    }
    Ok(out)
}

/// Strict interior test for the point `m / 2`.
fn contains_interior_doubled(p: &Polygon, m2: Point) -> bool {
    let doubled = Polygon::hull(p.vertices().iter().map(|v| Point::new(2 * v.x, 2 * v.y))).unwrap();
    doubled.contains_interior(m2)
}
