//! Browser demo: Hessians, curve censuses and patchwork subdivisions.

use hessweave::newton::lower_subdivision;
use hessweave::patchwork::{assemble, complete_layout, paper_layout, solve_heights, Mode};
use hessweave::ratpoly::json::{parse_polynomial, Polynomial};
use hessweave::ratpoly::parse_rational;
use hessweave::topology::{count_with_curve, curve_svg};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest grid the page will request; keeps a census under a second.
pub const MAX_RESOLUTION: usize = 512;

pub fn hessian_of(text: &str) -> Result<String, String> {
    let p = parse_polynomial(text).map_err(|e| e.to_string())?;
    Ok(p.hessian().to_json())
}

/// `{"census": …, "svg": "<svg …>"}` for the zero set of a polynomial
/// (optionally the Hessian of the input).
pub fn census_of(text: &str, hessian: bool, window_k: &str, resolution: usize) -> Result<String, String> {
    let p = match parse_polynomial(text).map_err(|e| e.to_string())? {
        Polynomial::Bi(p) => p,
        Polynomial::Param(_) => return Err("the demo counts X,Y polynomials only".into()),
    };
    let f = if hessian { p.hessian().strip_monomial().1 } else { p };
    let k = parse_rational(window_k).map_err(|_| format!("{window_k:?} is not num/den"))?;
    let (census, curve) = count_with_curve(&f, &k, resolution.min(MAX_RESOLUTION)).map_err(|e| e.to_string())?;
    Ok(json!({"census": census, "svg": curve_svg(&curve)}).to_string())
}

/// `{"pieces": n, "total_degree": d, "svg": "<svg …>"}` for the layout of
/// degree `d`.
pub fn subdivision_of(d: u32, mode: &str) -> Result<String, String> {
    let mode: Mode = mode.parse()?;
    let run = || -> Result<String, hessweave::patchwork::PatchworkError> {
        let layout = complete_layout(&paper_layout(d, mode)?)?;
        let q = assemble(&layout, &solve_heights(&layout)?)?;
        let (lifting, sub) = lower_subdivision(&q)?;
        Ok(json!({
            "pieces": layout.non_filler_count(),
            "total_degree": q.total_degree().ok(),
            "svg": layout.svg(&lifting, &sub),
        })
        .to_string())
    };
    run().map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn hessian(text: &str) -> Result<String, JsError> {
    hessian_of(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn census(text: &str, hessian: bool, window_k: &str, resolution: usize) -> Result<String, JsError> {
    census_of(text, hessian, window_k, resolution).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn subdivision(d: u32, mode: &str) -> Result<String, JsError> {
    subdivision_of(d, mode).map_err(|e| JsError::new(&e))
}
