use serde::Serialize;

use super::eval::SignEvaluator;
use super::grid::{check_window, plane_grid, PlaneGrid, Quadrant};
use super::TopologyError;
use crate::ratpoly::{BiPoly, Rational, Sign};

/// A sign-change edge of the plane grid: `Horizontal(a, b)` joins samples
/// `(a, b)` and `(a + 1, b)`, `Vertical(a, b)` joins `(a, b)` and `(a, b + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GridEdge {
    Horizontal(usize, usize),
    Vertical(usize, usize),
}

/// One marching-squares segment inside cell `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub cell: (usize, usize),
    pub from: GridEdge,
    pub to: GridEdge,
    pub component: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentInfo {
    pub compact: bool,
    /// Set when every crossing of the component lies in one quadrant block.
    pub quadrant: Option<Quadrant>,
    /// Distinct cells carrying segments of the component, in scan order.
    pub cells: Vec<(usize, usize)>,
}

/// The traced zero set on one plane grid.
#[derive(Debug, Clone)]
pub struct CurveComplex {
    pub grid: PlaneGrid,
    pub k: Rational,
    pub segments: Vec<Segment>,
    pub components: Vec<ComponentInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentCensus {
    #[serde(rename = "compact_in_R2")]
    pub compact_in_r2: usize,
    /// Compact components contained in one open quadrant, in the order
    /// `++, +−, −+, −−`.
    pub per_quadrant: [usize; 4],
    pub boundary_touching: usize,
    pub resolution: usize,
    pub stable: bool,
}

impl ComponentCensus {
    pub fn in_torus(&self) -> usize {
        self.per_quadrant.iter().sum()
    }

    fn same_counts(&self, other: &ComponentCensus) -> bool {
        self.compact_in_r2 == other.compact_in_r2
            && self.per_quadrant == other.per_quadrant
            && self.boundary_touching == other.boundary_touching
    }

    fn from_complex(c: &CurveComplex) -> ComponentCensus {
        let mut per_quadrant = [0; 4];
        let mut compact = 0;
        for info in c.components.iter().filter(|i| i.compact) {
            compact += 1;
            if let Some(q) = info.quadrant {
                per_quadrant[q.index()] += 1;
            }
        }
        ComponentCensus {
            compact_in_r2: compact,
            per_quadrant,
            boundary_touching: c.components.len() - compact,
            resolution: c.grid.n,
            stable: false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("census serializes")
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins, so labels do not depend on merge order.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

struct EdgeIndex {
    side: usize,
}

impl EdgeIndex {
    fn count(&self) -> usize {
        2 * self.side * (self.side - 1)
    }

    fn id(&self, e: GridEdge) -> u32 {
        let s = self.side;
        (match e {
            GridEdge::Horizontal(a, b) => b * (s - 1) + a,
            GridEdge::Vertical(a, b) => s * (s - 1) + a * (s - 1) + b,
        }) as u32
    }

    fn on_boundary(&self, e: GridEdge) -> bool {
        let last = self.side - 1;
        match e {
            GridEdge::Horizontal(_, b) => b == 0 || b == last,
            GridEdge::Vertical(a, _) => a == 0 || a == last,
        }
    }
}

fn edge_quadrant(g: &PlaneGrid, e: GridEdge) -> Option<Quadrant> {
    let (a0, b0, a1, b1) = match e {
        GridEdge::Horizontal(a, b) => (a, b, a + 1, b),
        GridEdge::Vertical(a, b) => (a, b, a, b + 1),
    };
    let (x0, x1) = (g.is_positive_index(a0), g.is_positive_index(a1));
    let (y0, y1) = (g.is_positive_index(b0), g.is_positive_index(b1));
    (x0 == x1 && y0 == y1).then(|| Quadrant::from_signs(x0, y0))
}

/// Exact sign at the centre of cell `(a, b)`, zero counted as positive.
fn centre_positive(ev: &SignEvaluator, g: &PlaneGrid, a: usize, b: usize) -> bool {
    let two = Rational::from_integer(2.into());
    let x = (g.coords[a].to_rational() + g.coords[a + 1].to_rational()) / &two;
    let y = (g.coords[b].to_rational() + g.coords[b + 1].to_rational()) / &two;
    ev.sign_at_rational(&x, &y) != Sign::Negative
}

fn trace(ev: &SignEvaluator, k: &Rational, n: usize) -> CurveComplex {
    let grid = plane_grid(ev, k, n);
    let side = grid.side();
    let idx = EdgeIndex { side };
    let mut uf = UnionFind::new(idx.count());
    let mut pairs: Vec<((usize, usize), GridEdge, GridEdge)> = Vec::new();

    for b in 0..side - 1 {
        for a in 0..side - 1 {
            let s00 = grid.positive(a, b);
            let s10 = grid.positive(a + 1, b);
            let s01 = grid.positive(a, b + 1);
            let s11 = grid.positive(a + 1, b + 1);
            let bottom = GridEdge::Horizontal(a, b);
            let top = GridEdge::Horizontal(a, b + 1);
            let left = GridEdge::Vertical(a, b);
            let right = GridEdge::Vertical(a + 1, b);
            let mut active = Vec::with_capacity(4);
            if s00 != s10 {
                active.push(bottom);
            }
            if s10 != s11 {
                active.push(right);
            }
            if s11 != s01 {
                active.push(top);
            }
            if s01 != s00 {
                active.push(left);
            }
            match active.len() {
                0 => {}
                2 => pairs.push(((a, b), active[0], active[1])),
                4 => {
                    if centre_positive(ev, &grid, a, b) == s00 {
                        // The centre joins c00 and c11; the curve cuts off c10 and c01.
                        pairs.push(((a, b), bottom, right));
                        pairs.push(((a, b), left, top));
                    } else {
                        pairs.push(((a, b), bottom, left));
                        pairs.push(((a, b), right, top));
                    }
                }
                _ => unreachable!("sign changes around a cell come in pairs"),
            }
        }
    }
    for &(_, e, f) in &pairs {
        uf.union(idx.id(e), idx.id(f));
    }

    // Components numbered by first appearance in scan order.
    let mut label_of_root: std::collections::HashMap<u32, usize> = std::collections::HashMap::new();
    let mut components: Vec<ComponentInfo> = Vec::new();
    let mut quadrant_mixed: Vec<bool> = Vec::new();
    let mut segments = Vec::with_capacity(pairs.len());
    for &(cell, from, to) in &pairs {
        let root = uf.find(idx.id(from));
        let label = *label_of_root.entry(root).or_insert_with(|| {
            components.push(ComponentInfo { compact: true, quadrant: edge_quadrant(&grid, from), cells: Vec::new() });
            quadrant_mixed.push(false);
            components.len() - 1
        });
        let info = &mut components[label];
        if info.cells.last() != Some(&cell) {
            info.cells.push(cell);
        }
        for e in [from, to] {
            if idx.on_boundary(e) {
                info.compact = false;
            }
            if edge_quadrant(&grid, e) != info.quadrant {
                quadrant_mixed[label] = true;
            }
        }
        segments.push(Segment { cell, from, to, component: label });
    }
    for (info, mixed) in components.iter_mut().zip(quadrant_mixed) {
        if mixed {
            info.quadrant = None;
        }
        info.cells.dedup();
    }
    CurveComplex { grid, k: k.clone(), segments, components }
}

/// Traces `{F = 0}` on the joined `2n × 2n` plane grid.
pub fn trace_curve(f: &BiPoly, k: &Rational, n: usize) -> Result<CurveComplex, TopologyError> {
    if f.is_zero() {
        return Err(TopologyError::ZeroPolynomial);
    }
    check_window(k, n)?;
    Ok(trace(&SignEvaluator::new(f), k, n))
}

/// Census of `{F = 0}` in the window `|log₂|X||, |log₂|Y|| ≤ K`, audited by
/// repeating the count at resolution `2n`.
pub fn count_components(f: &BiPoly, k: &Rational, n: usize) -> Result<ComponentCensus, TopologyError> {
    Ok(count_with_curve(f, k, n)?.0)
}

/// Like [`count_components`], also returning the curve traced at `n`.
pub fn count_with_curve(f: &BiPoly, k: &Rational, n: usize) -> Result<(ComponentCensus, CurveComplex), TopologyError> {
    if f.is_zero() {
        return Err(TopologyError::ZeroPolynomial);
    }
    check_window(k, n)?;
    let ev = SignEvaluator::new(f);
    let curve = trace(&ev, k, n);
    let mut census = ComponentCensus::from_complex(&curve);
    let fine = ComponentCensus::from_complex(&trace(&ev, k, 2 * n));
    census.stable = census.same_counts(&fine);
    Ok((census, curve))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{bipoly, int, rat};

    #[test]
    fn unit_circle_crosses_axes() {
        let f = bipoly(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
        let c = count_components(&f, &int(4), 64).unwrap();
        assert_eq!(c.compact_in_r2, 1);
        assert_eq!(c.per_quadrant, [0, 0, 0, 0]);
        assert_eq!(c.boundary_touching, 0);
        assert!(c.stable);
    }

    #[test]
    fn empty_and_constant() {
        let c = count_components(&bipoly(&[(0, 0, 1)]), &int(4), 32).unwrap();
        assert_eq!((c.compact_in_r2, c.boundary_touching, c.stable), (0, 0, true));
        assert_eq!(count_components(&BiPoly::zero(), &int(4), 32), Err(TopologyError::ZeroPolynomial));
    }

    #[test]
    fn shifted_circle_in_one_quadrant() {
        // (X − 4)² + (Y + 4)² − 1 lies in the quadrant +−.
        let f = bipoly(&[(2, 0, 1), (1, 0, -8), (0, 2, 1), (0, 1, 8), (0, 0, 31)]);
        let c = count_components(&f, &int(5), 64).unwrap();
        assert_eq!(c.compact_in_r2, 1);
        assert_eq!(c.per_quadrant, [0, 1, 0, 0]);
    }

    #[test]
    fn lines_touch_the_boundary() {
        let f = bipoly(&[(1, 0, 1), (0, 1, -1)]);
        let c = count_components(&f, &int(3), 32).unwrap();
        assert_eq!(c.compact_in_r2, 0);
        assert!(c.boundary_touching >= 1);
    }

    #[test]
    fn ovals_outside_the_window_are_boundary_touching() {
        // Circle of radius 1 around (64, 64); the window stops at 2^5.
        let f = bipoly(&[(2, 0, 1), (1, 0, -128), (0, 2, 1), (0, 1, -128), (0, 0, 8191)]);
        let c = count_components(&f, &rat(5, 1), 64).unwrap();
        assert_eq!(c.compact_in_r2, 0);
    }

    #[test]
    fn census_json_shape() {
        let c = ComponentCensus {
            compact_in_r2: 1,
            per_quadrant: [1, 0, 0, 0],
            boundary_touching: 2,
            resolution: 64,
            stable: true,
        };
        assert_eq!(
            c.to_json(),
            r#"{"compact_in_R2":1,"per_quadrant":[1,0,0,0],"boundary_touching":2,"resolution":64,"stable":true}"#
        );
    }
}
