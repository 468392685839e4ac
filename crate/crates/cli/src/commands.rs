use std::fs;
use std::path::{Path, PathBuf};

use hessweave::newton::{lower_subdivision, subdivision_value, Lifting, Subdivision};
use hessweave::patchwork::{
    assemble, complete_layout, lifting_slope, paper_layout, solve_heights, Layout, PatchworkError, PieceKind,
};
use hessweave::ratpoly::json::{parampoly_value, parse_polynomial, Polynomial};
use hessweave::ratpoly::{format_rational, ParamPoly};
use hessweave::topology::{count_with_curve, curve_svg, MIN_RESOLUTION};
use serde_json::{json, Value};

use crate::{exit, OutputArgs, RunConfig, SCHEMA};

/// A failure carrying its exit code; the message goes to standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure { code: exit::USAGE, message: message.into() }
    }
}

impl From<PatchworkError> for Failure {
    fn from(e: PatchworkError) -> Failure {
        let code = match e {
            PatchworkError::Infeasible { .. } => exit::INFEASIBLE,
            PatchworkError::DegreeTooSmall(_)
            | PatchworkError::LayoutFormat(_)
            | PatchworkError::Overlap(..)
            | PatchworkError::PieceSupport(_)
            | PatchworkError::EmptyLayout => exit::USAGE,
            _ => exit::VERIFICATION,
        };
        Failure { code, message: e.to_string() }
    }
}

pub fn finish(r: Result<u8, Failure>) -> u8 {
    match r {
        Ok(code) => code,
        Err(f) => {
            eprintln!("hessweave: {}", f.message);
            f.code
        }
    }
}

pub fn check_output(o: &OutputArgs) -> Result<(), Failure> {
    if o.svg && o.out.is_none() {
        return Err(Failure::usage("--svg needs --out <dir>"));
    }
    if let Some(dir) = &o.out {
        fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    Ok(())
}

pub fn check_resolution(n: usize) -> Result<(), Failure> {
    if n < MIN_RESOLUTION {
        return Err(Failure::usage(format!("--resolution must be at least {MIN_RESOLUTION}, got {n}")));
    }
    Ok(())
}

pub fn write_file(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    let path: PathBuf = dir.join(name);
    fs::write(&path, text)
        .map_err(|e| Failure { code: exit::USAGE, message: format!("cannot write {}: {e}", path.display()) })
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn read_polynomial(path: &Path) -> Result<Polynomial, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_polynomial(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn hessian(input: &Path) -> u8 {
    finish(read_polynomial(input).map(|p| {
        println!("{}", p.hessian().to_json());
        exit::OK
    }))
}

/// The pipeline up to the assembled polynomial.
pub struct Construction {
    pub layout: Layout,
    pub lifting: Lifting,
    pub q: ParamPoly,
    pub subdivision: Subdivision,
}

impl Construction {
    pub fn build(layout: &Layout) -> Result<Construction, PatchworkError> {
        let layout = complete_layout(layout)?;
        let heights = solve_heights(&layout)?;
        let q = assemble(&layout, &heights)?;
        let (lifting, subdivision) = lower_subdivision(&q)?;
        Ok(Construction { layout, lifting, q, subdivision })
    }

    pub fn kind_counts(&self) -> Value {
        let count = |k: PieceKind| self.layout.pieces.iter().filter(|p| p.kind == k).count();
        json!({
            "T1": count(PieceKind::T1),
            "T2": count(PieceKind::T2),
            "STRIP": count(PieceKind::Strip),
            "FILLER": count(PieceKind::Filler),
        })
    }

    pub fn svg(&self) -> String {
        self.layout.svg(&self.lifting, &self.subdivision)
    }

    pub fn to_value(&self) -> Result<Value, PatchworkError> {
        Ok(json!({
            "d": self.layout.d,
            "mode": self.layout.mode.as_str(),
            "pieces": self.kind_counts(),
            "non_filler": self.layout.non_filler_count(),
            "max_slope": format_rational(&lifting_slope(&self.q)?),
            "total_degree": self.q.total_degree().ok(),
            "layout": self.layout.to_value(),
            "subdivision": subdivision_value(&self.lifting, &self.subdivision),
            "q": parampoly_value(&self.q),
        }))
    }
}

fn infeasible_report(e: &PatchworkError) -> Option<Value> {
    match e {
        PatchworkError::Infeasible { edges } => Some(json!({
            "schema": SCHEMA,
            "command": "construct",
            "error": "infeasible",
            "edges": edges.iter().map(|(a, b)| json!([[a.x, a.y], [b.x, b.y]])).collect::<Vec<_>>(),
        })),
        _ => None,
    }
}

fn load_layout(cfg: &RunConfig, path: Option<&Path>) -> Result<Layout, Failure> {
    match path {
        Some(p) => {
            let text =
                fs::read_to_string(p).map_err(|e| Failure::usage(format!("cannot read {}: {e}", p.display())))?;
            Ok(Layout::from_json(&text)?)
        }
        None => Ok(paper_layout(cfg.degree.expect("clap requires --degree without --layout"), cfg.mode)?),
    }
}

pub fn construct(cfg: &RunConfig, layout_path: Option<&Path>) -> u8 {
    finish(construct_inner(cfg, layout_path))
}

fn construct_inner(cfg: &RunConfig, layout_path: Option<&Path>) -> Result<u8, Failure> {
    check_output(&cfg.output)?;
    let layout = load_layout(cfg, layout_path)?;
    let c = match Construction::build(&layout) {
        Ok(c) => c,
        Err(e) => {
            if let Some(report) = infeasible_report(&e) {
                let text = pretty(&report);
                print!("{text}");
                if let Some(dir) = &cfg.output.out {
                    write_file(dir, "construct.json", &text)?;
                }
            }
            return Err(e.into());
        }
    };
    let mut report = json!({"schema": SCHEMA, "command": "construct"});
    if let (Value::Object(r), Value::Object(body)) = (&mut report, c.to_value()?) {
        r.extend(body);
    }
    let text = pretty(&report);
    print!("{text}");
    if let Some(dir) = &cfg.output.out {
        write_file(dir, "construct.json", &text)?;
        write_file(dir, "layout.json", &format!("{}\n", c.layout.to_json()))?;
        write_file(dir, "q.json", &format!("{}\n", Polynomial::Param(c.q.clone()).to_json()))?;
        if cfg.output.svg {
            write_file(dir, "subdivision.svg", &c.svg())?;
        }
    }
    eprintln!(
        "construct d={} mode={}: {} pieces, {} non-filler, Q_t of total degree {}",
        c.layout.d,
        c.layout.mode.as_str(),
        c.layout.pieces.len(),
        c.layout.non_filler_count(),
        c.q.total_degree().map(|d| d.to_string()).unwrap_or_else(|_| "-".into()),
    );
    Ok(exit::OK)
}

pub fn count(cfg: &RunConfig, input: &Path) -> u8 {
    finish(count_inner(cfg, input))
}

fn count_inner(cfg: &RunConfig, input: &Path) -> Result<u8, Failure> {
    check_output(&cfg.output)?;
    check_resolution(cfg.resolution)?;
    let f = match (read_polynomial(input)?, &cfg.t) {
        (Polynomial::Bi(p), None) => p,
        (Polynomial::Param(p), Some(t)) => p.specialize_t(t),
        (Polynomial::Bi(_), Some(_)) => return Err(Failure::usage("--t applies only to t-dependent input")),
        (Polynomial::Param(_), None) => return Err(Failure::usage("t-dependent input needs --t <num/den>")),
    };
    let k = cfg.window_k.clone().expect("count always has a window bound");
    let (census, curve) = count_with_curve(&f, &k, cfg.resolution).map_err(|e| Failure::usage(e.to_string()))?;
    let report = json!({
        "schema": SCHEMA,
        "command": "count",
        "window_k": format_rational(&k),
        "t": cfg.t.as_ref().map(format_rational),
        "census": serde_json::to_value(&census).expect("census serializes"),
    });
    let text = pretty(&report);
    print!("{text}");
    if let Some(dir) = &cfg.output.out {
        write_file(dir, "count.json", &text)?;
        if cfg.output.svg {
            write_file(dir, "curve.svg", &curve_svg(&curve))?;
        }
    }
    eprintln!(
        "count: {} compact in R^2, per quadrant {:?}, {} touching the window, stable={}",
        census.compact_in_r2, census.per_quadrant, census.boundary_touching, census.stable
    );
    Ok(exit::OK)
}
