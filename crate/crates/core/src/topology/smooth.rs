use serde::Serialize;

use super::census::CurveComplex;
use super::ext::{ExtFloat, UNIT_ROUNDOFF};
use crate::ratpoly::{BiPoly, Var};

const MAX_DEPTH: u32 = 24;
const MAX_BOXES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSmoothness {
    pub component: usize,
    pub compact: bool,
    pub cells_checked: usize,
    /// First sampled cell where bisection could not separate the gradient
    /// from zero.
    pub failed_cell: Option<[usize; 2]>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub components: Vec<ComponentSmoothness>,
    pub pass: bool,
}

/// A polynomial prepared for enclosures over boxes.
struct Enclosure {
    terms: Vec<(u32, u32, ExtFloat)>,
    deg_x: u32,
    deg_y: u32,
    gamma: f64,
}

#[derive(Clone, Copy)]
struct Box2 {
    cx: ExtFloat,
    cy: ExtFloat,
    rx: ExtFloat,
    ry: ExtFloat,
    depth: u32,
}

fn powers(v: ExtFloat, n: u32) -> Vec<ExtFloat> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut p = ExtFloat::ONE;
    for _ in 0..=n {
        out.push(p);
        p = p.mul(v);
    }
    out
}

impl Enclosure {
    fn new(f: &BiPoly) -> Enclosure {
        let terms: Vec<(u32, u32, ExtFloat)> = f.terms().map(|(e, c)| (e.i, e.j, ExtFloat::from_rational(c))).collect();
        let deg_x = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let deg_y = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let gamma = 8.0 * (terms.len() as f64 + (deg_x + deg_y) as f64 + 8.0) * UNIT_ROUNDOFF;
        Enclosure { terms, deg_x, deg_y, gamma }
    }

    /// Whether the polynomial is certainly nonzero on the box. With
    /// `|x − c| ≤ r`, each monomial moves by at most
    /// `(|c_x| + r_x)^i (|c_y| + r_y)^j − |c_x|^i |c_y|^j`.
    fn excludes_zero(&self, b: &Box2) -> bool {
        if self.terms.is_empty() {
            return false;
        }
        let px = powers(b.cx, self.deg_x);
        let py = powers(b.cy, self.deg_y);
        let ax = powers(b.cx.abs(), self.deg_x);
        let ay = powers(b.cy.abs(), self.deg_y);
        let ux = powers(b.cx.abs().add(b.rx), self.deg_x);
        let uy = powers(b.cy.abs().add(b.ry), self.deg_y);
        let (mut value, mut centre_abs, mut upper) = (ExtFloat::ZERO, ExtFloat::ZERO, ExtFloat::ZERO);
        for &(i, j, c) in &self.terms {
            let (i, j) = (i as usize, j as usize);
            value = value.add(c.mul(px[i]).mul(py[j]));
            centre_abs = centre_abs.add(c.abs().mul(ax[i]).mul(ay[j]));
            upper = upper.add(c.abs().mul(ux[i]).mul(uy[j]));
        }
        let spread = upper.sub(centre_abs).abs().add(upper.scale(self.gamma));
        value.cmp_abs(spread) == std::cmp::Ordering::Greater
    }
}

fn split(b: &Box2) -> [Box2; 4] {
    let (hx, hy) = (b.rx.scale(0.5), b.ry.scale(0.5));
    let mk = |sx: f64, sy: f64| Box2 {
        cx: b.cx.add(hx.scale(sx)),
        cy: b.cy.add(hy.scale(sy)),
        rx: hx.scale(1.0 + 1e-9),
        ry: hy.scale(1.0 + 1e-9),
        depth: b.depth + 1,
    };
    [mk(-1.0, -1.0), mk(1.0, -1.0), mk(-1.0, 1.0), mk(1.0, 1.0)]
}

/// Bisects until every box excludes a zero of `F`, `F_X` or `F_Y`.
fn cell_is_regular(checks: &[Enclosure; 3], root: Box2) -> bool {
    let mut stack = vec![root];
    let mut boxes = 0;
    while let Some(b) = stack.pop() {
        boxes += 1;
        if checks.iter().any(|e| e.excludes_zero(&b)) {
            continue;
        }
        if b.depth >= MAX_DEPTH || boxes >= MAX_BOXES {
            return false;
        }
        stack.extend(split(&b));
    }
    true
}

/// For every traced component, checks `samples` of its cells (evenly spaced
/// along the scan order) for a zero of the gradient on the curve. A pass is
/// evidence, not proof, of smoothness.
pub fn smoothness_spotcheck(f: &BiPoly, curve: &CurveComplex, samples: usize) -> SmoothnessReport {
    let checks = [Enclosure::new(f), Enclosure::new(&f.partial(Var::X)), Enclosure::new(&f.partial(Var::Y))];
    let coords: Vec<ExtFloat> = curve.grid.coords.iter().map(|d| d.to_ext()).collect();
    let mut components = Vec::with_capacity(curve.components.len());
    for (label, info) in curve.components.iter().enumerate() {
        let len = info.cells.len();
        let take = samples.min(len);
        let mut failed = None;
        for s in 0..take {
            let (a, b) = info.cells[s * len / take];
            let (x0, x1, y0, y1) = (coords[a], coords[a + 1], coords[b], coords[b + 1]);
            let root = Box2 {
                cx: x0.add(x1).scale(0.5),
                cy: y0.add(y1).scale(0.5),
                rx: x1.sub(x0).scale(0.5 * (1.0 + 1e-9)),
                ry: y1.sub(y0).scale(0.5 * (1.0 + 1e-9)),
                depth: 0,
            };
            if !cell_is_regular(&checks, root) {
                failed = Some([a, b]);
                break;
            }
        }
        components.push(ComponentSmoothness {
            component: label,
            compact: info.compact,
            cells_checked: take,
            failed_cell: failed,
            pass: failed.is_none(),
        });
    }
    let pass = components.iter().all(|c| c.pass);
    SmoothnessReport { components, pass }
}
