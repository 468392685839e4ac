//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use hessweave::newton::{subdivide, Polygon};
use hessweave::patchwork::{
    assemble, complete_layout, hessian_curve_at, paper_layout, select_t, solve_heights, verify_hessian_gluing,
    CountSettings, Mode,
};
use hessweave::ratpoly::{int, rat, BiPoly, Exponent, Rational};
use hessweave::topology::{
    count_components, count_with_curve, empty_piece_evidence, oval_piece_evidence, smoothness_spotcheck, EmptyFamily,
    OvalFamily,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-50..=50), rng.gen_range(1..=12))
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if r != int(0) {
            return r;
        }
    }
}

fn c1_hessian_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = 0;
    for _ in 0..200 {
        let mut q = BiPoly::zero();
        for _ in 0..rng.gen_range(1..=12) {
            q.add_term(Exponent::new(rng.gen_range(0..=7), rng.gen_range(0..=7)), random_rational(&mut rng));
        }
        let (a, b, c, l) = (
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        );
        let affine = BiPoly::x().scale(&a).add(&BiPoly::y().scale(&b)).add(&BiPoly::constant(c));
        let h = q.hessian();
        if q.add(&affine).hessian() != h || q.scale(&l).hessian() != h.scale(&(&l * &l)) {
            bad += 1;
        }
    }
    let mut bad_degree = Vec::new();
    for d in 3..=6u32 {
        for _ in 0..50 {
            let mut q = BiPoly::zero();
            for i in 0..=d {
                for j in 0..=d - i {
                    q.add_term(Exponent::new(i, j), nonzero_rational(&mut rng));
                }
            }
            if q.hessian().total_degree().ok() != Some(2 * (d - 2)) {
                bad_degree.push(d);
            }
        }
    }
    outcome(
        bad == 0 && bad_degree.is_empty(),
        format!("200 identity cases ({bad} failed), 200 dense degree cases ({} failed)", bad_degree.len()),
    )
}

fn c2_lemma_bound() -> Outcome {
    let mut failed = Vec::new();
    for fam in EmptyFamily::ALL {
        for i in 2..=6 {
            for j in 2..=6 {
                match empty_piece_evidence(i, j, fam) {
                    Ok(e) if e.discriminant_negative && e.grid_empty() => {}
                    _ => failed.push(format!("{fam}@({i},{j})")),
                }
            }
        }
    }
    outcome(
        failed.is_empty(),
        format!("100 cases, negative discriminant and one-sign grid at n=256; failures {failed:?}"),
    )
}

fn c3_lemma_pieces() -> Outcome {
    let mut failed = Vec::new();
    for fam in OvalFamily::ALL {
        for i in 2..=5 {
            for j in 2..=5 {
                match oval_piece_evidence(i, j, fam) {
                    Ok(e) if e.discriminant_positive() && e.single_oval() => {}
                    _ => failed.push(format!("{fam}@({i},{j})")),
                }
            }
        }
    }
    outcome(failed.is_empty(), format!("48 cases, one stable compact oval; failures {failed:?}"))
}

fn c4_gluing() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for d in 4..=6 {
        let l = complete_layout(&paper_layout(d, Mode::Literal).unwrap()).unwrap();
        let q = assemble(&l, &solve_heights(&l).unwrap()).unwrap();
        let r = verify_hessian_gluing(&q).unwrap();
        pass &= r.pass;
        parts.push(format!("d={d}: {} cells in x,y>=2 {}", r.eligible_count(), if r.pass { "ok" } else { "FAILED" }));
    }
    outcome(pass, parts.join("; "))
}

fn c5_regularity() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for d in 4..=7 {
        let l = complete_layout(&paper_layout(d, Mode::Literal).unwrap()).unwrap();
        let v = solve_heights(&l).unwrap();
        let s = subdivide(&v).unwrap();
        let got: BTreeSet<Polygon> = s.cells_of_dim(2).map(|c| c.polygon.clone()).collect();
        let ok = got == l.cells();
        pass &= ok;
        parts.push(format!("d={d}: {} cells {}", got.len(), if ok { "equal" } else { "DIFFER" }));
    }
    outcome(pass, parts.join("; "))
}

fn c6_end_to_end() -> Outcome {
    let cfg = CountSettings::default();
    let mut parts = Vec::new();
    let mut pass = true;
    for d in 4..=7u32 {
        let predicted = 2 * (d as usize - 3).pow(2) + (d as usize - 2);
        let bound = (d as usize - 2).pow(2);
        let l = complete_layout(&paper_layout(d, Mode::Literal).unwrap()).unwrap();
        let q = assemble(&l, &solve_heights(&l).unwrap()).unwrap();
        match select_t(&q, predicted, &cfg) {
            Err(e) => {
                pass = false;
                parts.push(format!("d={d}: {e}"));
            }
            Ok(s) => {
                let (_, h) = hessian_curve_at(&q, &s.t);
                let (census, curve) = count_with_curve(&h, &s.window_k, cfg.resolution).unwrap();
                let smooth = smoothness_spotcheck(&h, &curve, 8).pass;
                let m = census.compact_in_r2;
                let ok = census.stable && m == predicted && m >= bound && (d != 4 || m == bound) && smooth;
                pass &= ok;
                parts.push(format!(
                    "d={d}: t={} measured {m} predicted {predicted} bound {bound} stable={} smooth={smooth}",
                    hessweave::ratpoly::format_rational(&s.t),
                    census.stable
                ));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

/// `b²(X − x₀)² + a²(Y − y₀)² − a²b²`.
fn ellipse(x0: &Rational, y0: &Rational, a: &Rational, b: &Rational) -> BiPoly {
    let x = BiPoly::x().sub(&BiPoly::constant(x0.clone()));
    let y = BiPoly::y().sub(&BiPoly::constant(y0.clone()));
    let (a2, b2) = (a * a, b * b);
    x.mul(&x).scale(&b2).add(&y.mul(&y).scale(&a2)).sub(&BiPoly::constant(&a2 * &b2))
}

/// Axis-aligned ellipses with pairwise separated bounding boxes in
/// `[-24, 24]²`; their product has exactly `m` compact ovals.
fn random_ellipses(rng: &mut ChaCha8Rng, m: usize) -> BiPoly {
    let mut boxes: Vec<(f64, f64, f64, f64)> = Vec::new();
    let mut f = BiPoly::constant(int(1));
    while boxes.len() < m {
        let (x0, y0): (i64, i64) = (rng.gen_range(-36..=36), rng.gen_range(-36..=36));
        let (a, b): (i64, i64) = (rng.gen_range(4..=10), rng.gen_range(4..=10));
        let h = |v: i64| v as f64 / 2.0;
        let bx = (h(x0 - a), h(x0 + a), h(y0 - b), h(y0 + b));
        let apart =
            |o: &(f64, f64, f64, f64)| bx.1 + 1.0 < o.0 || o.1 + 1.0 < bx.0 || bx.3 + 1.0 < o.2 || o.3 + 1.0 < bx.2;
        if bx.0 < -24.0 || bx.1 > 24.0 || bx.2 < -24.0 || bx.3 > 24.0 || !boxes.iter().all(apart) {
            continue;
        }
        boxes.push(bx);
        f = f.mul(&ellipse(&rat(x0, 2), &rat(y0, 2), &rat(a, 2), &rat(b, 2)));
    }
    f
}

fn c7_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut wrong = Vec::new();
    for case in 0..40 {
        let m = [1, 2, 3, 5][case % 4];
        let f = random_ellipses(&mut rng, m);
        let c = count_components(&f, &int(6), 512).unwrap();
        if c.compact_in_r2 != m {
            wrong.push(format!("case {case}: {} != {m}", c.compact_in_r2));
        }
    }
    outcome(wrong.is_empty(), format!("40 products of m in {{1,2,3,5}} ellipses; mismatches {wrong:?}"))
}

fn verify_run(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let o = Command::new(env!("CARGO_BIN_EXE_hessweave"))
        .args(["verify", "--degree", "4", "--svg", "--out", dir.to_str().unwrap()])
        .output()
        .expect("binary runs");
    let mut files = vec![("stdout".to_string(), o.stdout)];
    for f in ["report.json", "subdivision.svg", "curve.svg"] {
        files.push((f.to_string(), std::fs::read(dir.join(f)).unwrap_or_default()));
    }
    files
}

fn c8_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let a = verify_run(&dir.path().join("a"));
    let b = verify_run(&dir.path().join("b"));
    let differing: Vec<&str> =
        a.iter().zip(&b).filter(|(x, y)| x.1 != y.1 || x.1.is_empty()).map(|(x, _)| x.0.as_str()).collect();
    outcome(differing.is_empty(), format!("verify --degree 4 twice; differing or missing {differing:?}"))
}

fn main() {
    type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("C1", "hessian algebra", Duration::from_secs(10), c1_hessian_algebra),
        ("C2", "empty lemma pieces", Duration::from_secs(120), c2_lemma_bound),
        ("C3", "oval lemma pieces", Duration::from_secs(600), c3_lemma_pieces),
        ("C4", "hessian gluing", Duration::from_secs(300), c4_gluing),
        ("C5", "regularity audit", Duration::from_secs(120), c5_regularity),
        ("C6", "end-to-end count", Duration::from_secs(1800), c6_end_to_end),
        ("C7", "ellipse oracle", Duration::from_secs(300), c7_oracle),
        ("C8", "determinism", Duration::MAX, c8_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| a.starts_with('C')).collect();
    let mut failures = 0;
    for (id, name, limit, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| x == id) {
            continue;
        }
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        let pass = o.pass && took <= limit;
        failures += usize::from(!pass);
        println!("{id} {} {name}: {} ({:.1}s)", if pass { "PASS" } else { "FAIL" }, o.detail, took.as_secs_f64());
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
