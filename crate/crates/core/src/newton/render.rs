use std::fmt::Write;

use serde_json::{json, Value};

use super::polygon::{Point, Polygon};
use super::subdivision::{Lifting, Subdivision};
use crate::ratpoly::format_rational;

fn pts(p: &[Point]) -> Value {
    Value::Array(p.iter().map(|q| json!([q.x, q.y])).collect())
}

pub fn subdivision_value(l: &Lifting, s: &Subdivision) -> Value {
    json!({
        "polygon": pts(s.polygon.vertices()),
        "cells": s.cells.iter().map(|c| json!({"dim": c.dim, "verts": pts(c.polygon.vertices())})).collect::<Vec<_>>(),
        "heights": l.iter().map(|(p, h)| json!([p.x, p.y, format_rational(h)])).collect::<Vec<_>>(),
    })
}

pub fn subdivision_json(l: &Lifting, s: &Subdivision) -> String {
    subdivision_value(l, s).to_string()
}

const UNIT: i64 = 40;
const PAD: i64 = 20;

/// One path per 2-cell (with optional fill per cell), then the lifted points
/// as circles. Cells are drawn in subdivision order.
pub fn subdivision_svg(s: &Subdivision, l: &Lifting, fills: &dyn Fn(&Polygon) -> Option<&'static str>) -> String {
    let xs = s.polygon.vertices().iter().map(|p| p.x);
    let ys = s.polygon.vertices().iter().map(|p| p.y);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let w = (x1 - x0) * UNIT + 2 * PAD;
    let h = (y1 - y0) * UNIT + 2 * PAD;
    let map = |p: Point| ((p.x - x0) * UNIT + PAD, (y1 - p.y) * UNIT + PAD);
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, r##"<rect width="{w}" height="{h}" fill="#ffffff"/>"##);
    for c in s.top_cells() {
        let mut d = String::new();
        for (k, &v) in c.polygon.vertices().iter().enumerate() {
            let (px, py) = map(v);
            let _ = write!(d, "{}{px} {py} ", if k == 0 { "M" } else { "L" });
        }
        d.push('Z');
        let fill = fills(&c.polygon).unwrap_or("none");
        let _ = writeln!(out, r##"<path d="{d}" fill="{fill}" stroke="#333333" stroke-width="1.5"/>"##);
    }
    for (p, _) in l.iter() {
        let (px, py) = map(p);
        let _ = writeln!(out, r##"<circle cx="{px}" cy="{py}" r="3" fill="#1f4e9c"/>"##);
    }
    out.push_str("</svg>\n");
    out
}
