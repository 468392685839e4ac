use std::fmt::Write;

use super::census::{CurveComplex, GridEdge};

const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];
const UNBOUNDED: &str = "#9a9a9a";
const PIXELS: usize = 800;

fn point(e: GridEdge, side: usize) -> (f64, f64) {
    let top = (side - 1) as f64;
    match e {
        GridEdge::Horizontal(a, b) => (a as f64 + 0.5, top - b as f64),
        GridEdge::Vertical(a, b) => (a as f64, top - b as f64 - 0.5),
    }
}

/// The traced curve in log-log grid coordinates, one path per component.
/// Compact components take colours from a fixed palette by label; the
/// others are grey. The centre lines mark the coordinate axes.
pub fn curve_svg(curve: &CurveComplex) -> String {
    let side = curve.grid.side();
    let top = (side - 1) as f64;
    let mut paths: Vec<String> = vec![String::new(); curve.components.len()];
    for s in &curve.segments {
        let (x0, y0) = point(s.from, side);
        let (x1, y1) = point(s.to, side);
        let _ = write!(paths[s.component], "M{x0} {y0}L{x1} {y1}");
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{PIXELS}" height="{PIXELS}" viewBox="0 0 {top} {top}">"#
    );
    let _ = writeln!(out, r##"<rect width="{top}" height="{top}" fill="#ffffff"/>"##);
    let mid = curve.grid.n as f64 - 0.5;
    let _ = writeln!(
        out,
        r##"<path d="M{mid} 0V{top}M0 {mid}H{top}" stroke="#cccccc" stroke-width="{w}" fill="none"/>"##,
        w = top / PIXELS as f64
    );
    let mut compact_rank = 0;
    for (info, d) in curve.components.iter().zip(&paths) {
        let colour = if info.compact {
            compact_rank += 1;
            PALETTE[(compact_rank - 1) % PALETTE.len()]
        } else {
            UNBOUNDED
        };
        let _ = writeln!(
            out,
            r#"<path d="{d}" stroke="{colour}" stroke-width="{w}" fill="none" stroke-linecap="round"/>"#,
            w = 2.0 * top / PIXELS as f64
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{bipoly, int};
    use crate::topology::trace_curve;

    #[test]
    fn circle_render() {
        let f = bipoly(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
        let c = trace_curve(&f, &int(4), 32).unwrap();
        let svg = curve_svg(&c);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("#d62728").count(), 1);
        assert_eq!(svg, curve_svg(&trace_curve(&f, &int(4), 32).unwrap()));
    }
}
