use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer lattice point. Ordered lexicographically by `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point::new(x, y)
    }
}

/// Twice the signed area of the triangle `o, a, b`; positive when
/// counterclockwise.
pub fn cross(o: Point, a: Point, b: Point) -> i128 {
    let (ax, ay) = ((a.x - o.x) as i128, (a.y - o.y) as i128);
    let (bx, by) = ((b.x - o.x) as i128, (b.y - o.y) as i128);
    ax * by - ay * bx
}

fn dot(o: Point, a: Point, b: Point) -> i128 {
    ((a.x - o.x) as i128) * ((b.x - o.x) as i128) + ((a.y - o.y) as i128) * ((b.y - o.y) as i128)
}

/// Convex lattice polygon, possibly degenerate (segment or point).
///
/// Vertices are strictly convex, counterclockwise, and start at the
/// lexicographically smallest vertex, so two polygons are equal exactly when
/// their vertex lists are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Convex hull of a point set; `None` when the set is empty.
    pub fn hull<I: IntoIterator<Item = Point>>(points: I) -> Option<Polygon> {
        let mut pts: Vec<Point> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return None;
        }
        if pts.len() <= 2 {
            return Some(Polygon { vertices: pts });
        }
        let mut lower: Vec<Point> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Some(Polygon { vertices: lower })
    }

    /// Builds a polygon from vertices that must already be in canonical
    /// position up to rotation; used for literal cells.
    pub fn from_vertices<I: IntoIterator<Item = Point>>(vertices: I) -> Option<Polygon> {
        Self::hull(vertices)
    }

    pub fn point(p: Point) -> Polygon {
        Polygon { vertices: vec![p] }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Affine dimension: 0, 1 or 2.
    pub fn dim(&self) -> u8 {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    /// Twice the enclosed area (an integer for lattice polygons).
    pub fn twice_area(&self) -> i128 {
        let v = &self.vertices;
        if v.len() < 3 {
            return 0;
        }
        (1..v.len() - 1).map(|k| cross(v[0], v[k], v[k + 1])).sum()
    }

    /// Directed boundary edges, counterclockwise. A segment yields both
    /// directions; a point yields none.
    pub fn edges(&self) -> Vec<(Point, Point)> {
        let v = &self.vertices;
        match v.len() {
            1 => Vec::new(),
            _ => (0..v.len()).map(|k| (v[k], v[(k + 1) % v.len()])).collect(),
        }
    }

    /// Closed containment.
    pub fn contains(&self, p: Point) -> bool {
        let v = &self.vertices;
        match v.len() {
            1 => v[0] == p,
            2 => cross(v[0], v[1], p) == 0 && dot(p, v[0], v[1]) <= 0,
            _ => self.edges().iter().all(|&(a, b)| cross(a, b, p) >= 0),
        }
    }

    /// Strict interior containment (relative to the plane; degenerate
    /// polygons have empty interior).
    pub fn contains_interior(&self, p: Point) -> bool {
        self.dim() == 2 && self.edges().iter().all(|&(a, b)| cross(a, b, p) > 0)
    }

    pub fn lattice_points(&self) -> Vec<Point> {
        let xmin = self.vertices.iter().map(|p| p.x).min().unwrap();
        let xmax = self.vertices.iter().map(|p| p.x).max().unwrap();
        let ymin = self.vertices.iter().map(|p| p.y).min().unwrap();
        let ymax = self.vertices.iter().map(|p| p.y).max().unwrap();
        let mut out = Vec::new();
        for x in xmin..=xmax {
            for y in ymin..=ymax {
                let p = Point::new(x, y);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn translate(&self, by: Point) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|p| p.add(by)).collect() }
    }

    /// Every vertex satisfies `x ≥ xmin` and `y ≥ ymin`.
    pub fn in_quadrant(&self, xmin: i64, ymin: i64) -> bool {
        self.vertices.iter().all(|p| p.x >= xmin && p.y >= ymin)
    }

    /// Minkowski sum by merging the two counterclockwise edge sequences.
    pub fn minkowski_sum(&self, other: &Polygon) -> Polygon {
        if self.dim() < 2 || other.dim() < 2 {
            let sums = self.vertices.iter().flat_map(|a| other.vertices.iter().map(move |b| a.add(*b)));
            return Polygon::hull(sums).expect("nonempty");
        }
        let mut edges: Vec<Point> = Vec::new();
        let (ea, eb) = (self.edge_vectors(), other.edge_vectors());
        let (mut i, mut j) = (0, 0);
        while i < ea.len() || j < eb.len() {
            let take_a = j >= eb.len() || (i < ea.len() && angle_cmp(ea[i], eb[j]) != std::cmp::Ordering::Greater);
            if take_a {
                edges.push(ea[i]);
                i += 1;
            } else {
                edges.push(eb[j]);
                j += 1;
            }
        }
        let mut vertices = vec![self.vertices[0].add(other.vertices[0])];
        let mut k = 0;
        while k < edges.len() {
            let mut e = edges[k];
            k += 1;
            while k < edges.len() && angle_cmp(e, edges[k]) == std::cmp::Ordering::Equal {
                e = e.add(edges[k]);
                k += 1;
            }
            let last = *vertices.last().unwrap();
            vertices.push(last.add(e));
        }
        vertices.pop();
        // A segment plus a parallel segment leaves a repeated vertex.
        vertices.dedup();
        if vertices.len() > 1 && vertices[0] == *vertices.last().unwrap() {
            vertices.pop();
        }
        Polygon::hull(vertices).expect("nonempty")
    }

    fn edge_vectors(&self) -> Vec<Point> {
        self.edges().into_iter().map(|(a, b)| b.sub(a)).collect()
    }
}

/// Half-plane index for ordering edge directions counterclockwise starting
/// just after the downward direction, which is the order in which edges of
/// a canonical polygon appear.
fn half(v: Point) -> u8 {
    if v.x > 0 || (v.x == 0 && v.y > 0) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: Point, b: Point) -> std::cmp::Ordering {
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    let c = (a.x as i128) * (b.y as i128) - (a.y as i128) * (b.x as i128);
    0.cmp(&c)
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[(i64, i64)]) -> Polygon {
        Polygon::hull(pts.iter().map(|&p| p.into())).unwrap()
    }

    #[test]
    fn hull_is_canonical() {
        let p = poly(&[(1, 1), (0, 0), (1, 0), (0, 1), (1, 0)]);
        assert_eq!(p.vertices(), &[Point::new(0, 0), Point::new(1, 0), Point::new(1, 1), Point::new(0, 1)]);
        assert_eq!(p.twice_area(), 2);
        assert_eq!(poly(&[(0, 0), (1, 1), (2, 2)]).vertices(), &[Point::new(0, 0), Point::new(2, 2)]);
        assert_eq!(poly(&[(2, 2)]).dim(), 0);
    }

    #[test]
    fn minkowski_examples() {
        let t = poly(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(t.minkowski_sum(&t), poly(&[(0, 0), (2, 0), (0, 2)]));
        assert_eq!(t.minkowski_sum(&Polygon::point(Point::new(3, 4))), t.translate(Point::new(3, 4)));
        let sx = poly(&[(0, 0), (1, 0)]);
        let sy = poly(&[(0, 0), (0, 1)]);
        assert_eq!(sx.minkowski_sum(&sy), poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]));
        assert_eq!(sx.minkowski_sum(&sx), poly(&[(0, 0), (2, 0)]));
    }

    #[test]
    fn containment() {
        let t = poly(&[(0, 0), (2, 0), (0, 2)]);
        assert!(t.contains(Point::new(1, 1)));
        assert!(!t.contains_interior(Point::new(1, 1)));
        assert!(!t.contains_interior(Point::new(0, 0)));
        assert_eq!(t.lattice_points().len(), 6);
        let s = poly(&[(0, 0), (2, 2)]);
        assert!(s.contains(Point::new(1, 1)));
        assert!(!s.contains(Point::new(3, 3)));
    }
}
