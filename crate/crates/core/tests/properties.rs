use std::collections::BTreeSet;

use hessweave::newton::{
    is_valid_support, lower_subdivision, newton_polygon, subdivide, support_for_cell, truncate, AffineSupport, Lifting,
    Polygon,
};
use hessweave::ratpoly::{bipoly, int, rat, BiPoly, Exponent, ParamPoly, Rational, TPoly};
use hessweave::topology::{count_components, sign_grid, Quadrant, Window};
use proptest::prelude::*;

fn small_poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, -6i64..=6), 1..=max_terms)
        .prop_map(|t| bipoly(&t.iter().map(|&(i, j, c)| (i, j, c)).collect::<Vec<_>>()))
}

fn nonzero_poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = BiPoly> {
    small_poly(max_deg, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn positive_poly(max_deg: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, 1i64..=5), 1..=6).prop_map(|t| bipoly(&t))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

/// Parametric polynomials with generic-looking heights.
fn param_poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::btree_map((0u32..=4, 0u32..=4), (0u32..=6, 1i64..=3), 3..=12).prop_map(|m| {
        ParamPoly::from_terms(m.into_iter().map(|((i, j), (k, c))| (Exponent::new(i, j), TPoly::monomial(k, int(c)))))
    })
}

fn affine(a: &Rational, b: &Rational, c: &Rational) -> BiPoly {
    BiPoly::x().scale(a).add(&BiPoly::y().scale(b)).add(&BiPoly::constant(c.clone()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn hessian_ignores_affine_parts(q in small_poly(4, 8), a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(q.add(&affine(&a, &b, &c)).hessian(), q.hessian());
    }

    #[test]
    fn hessian_is_quadratic_in_scale(q in small_poly(4, 8), l in rational()) {
        prop_assert_eq!(q.scale(&l).hessian(), q.hessian().scale(&(&l * &l)));
    }

    #[test]
    fn hessian_commutes_with_specialization(p in param_poly(), n in 1i64..=5, d in 2i64..=9) {
        let t0 = rat(n, d);
        prop_assert_eq!(p.hessian().specialize_t(&t0), p.specialize_t(&t0).hessian());
    }

    #[test]
    fn ring_laws(p in small_poly(3, 5), q in small_poly(3, 5), r in small_poly(3, 5)) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
    }

    #[test]
    fn newton_polygon_of_product(p in positive_poly(3), q in positive_poly(3)) {
        let np = newton_polygon(&p).unwrap();
        let nq = newton_polygon(&q).unwrap();
        prop_assert_eq!(newton_polygon(&p.mul(&q)).unwrap(), np.minkowski_sum(&nq));
    }

    #[test]
    fn newton_polygon_of_signed_product(p in nonzero_poly(3, 6), q in nonzero_poly(3, 6)) {
        let sum = newton_polygon(&p).unwrap().minkowski_sum(&newton_polygon(&q).unwrap());
        let prod = newton_polygon(&p.mul(&q)).unwrap();
        prop_assert!(prod.vertices().iter().all(|v| sum.contains(*v)));
    }

    #[test]
    fn minkowski_laws(p in positive_poly(3), q in positive_poly(3), r in positive_poly(2)) {
        let (a, b, c) = (newton_polygon(&p).unwrap(), newton_polygon(&q).unwrap(), newton_polygon(&r).unwrap());
        prop_assert_eq!(a.minkowski_sum(&b), b.minkowski_sum(&a));
        prop_assert_eq!(a.minkowski_sum(&b).minkowski_sum(&c), a.minkowski_sum(&b.minkowski_sum(&c)));
    }

    #[test]
    fn subdivision_areas_balance(p in param_poly()) {
        let (_, sub) = lower_subdivision(&p).unwrap();
        if sub.polygon.dim() == 2 {
            let total: i128 = sub.cells_of_dim(2).map(|c| c.polygon.twice_area()).sum();
            prop_assert_eq!(total, sub.polygon.twice_area());
        }
    }

    #[test]
    fn relifting_supports_reproduces_cells(p in param_poly()) {
        let (l, sub) = lower_subdivision(&p).unwrap();
        prop_assume!(sub.polygon.dim() == 2);
        let supports: Vec<AffineSupport> = sub.cells_of_dim(2).map(|c| support_for_cell(&l, c).unwrap()).collect();
        let relift = Lifting::from_pairs(l.points().map(|q| {
            let h = supports.iter().map(|s| s.at(q)).max().unwrap();
            (q, h)
        }));
        let again = subdivide(&relift).unwrap();
        let a: BTreeSet<Polygon> = sub.cells_of_dim(2).map(|c| c.polygon.clone()).collect();
        let b: BTreeSet<Polygon> = again.cells_of_dim(2).map(|c| c.polygon.clone()).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn truncation_does_not_depend_on_support(p in param_poly(), eps in prop::sample::select(vec![rat(1, 1000), rat(-1, 1000), rat(1, 37)])) {
        let (l, sub) = lower_subdivision(&p).unwrap();
        for c in sub.cells_of_dim(1) {
            let s = support_for_cell(&l, c).unwrap();
            let v = c.polygon.vertices();
            let (u, w) = (v[0], v[1]);
            // Tilt by a linear form vanishing on the edge.
            let (nx, ny) = (int(-(w.y - u.y)), int(w.x - u.x));
            let shift = -(&nx * int(u.x) + &ny * int(u.y));
            let tilted = AffineSupport::new(&s.alpha + &eps * &nx, &s.beta + &eps * &ny, &s.gamma + &eps * &shift);
            if is_valid_support(&l, c, &tilted) {
                prop_assert_eq!(truncate(&p, c, &tilted).unwrap(), truncate(&p, c, &s).unwrap());
            }
        }
    }
}

/// `a(X − x₀)² + b(Y − y₀)² − r` with small integer data.
fn ellipse(a: i64, b: i64, x0: i64, y0: i64, r: i64) -> BiPoly {
    let x = BiPoly::x().sub(&BiPoly::constant(int(x0)));
    let y = BiPoly::y().sub(&BiPoly::constant(int(y0)));
    x.mul(&x).scale(&int(a)).add(&y.mul(&y).scale(&int(b))).sub(&BiPoly::constant(int(r)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn sign_grid_is_exact(f in nonzero_poly(4, 8), q in prop::sample::select(Quadrant::ALL.to_vec()), seed in 0usize..1000) {
        let w = Window::new(q, int(5), 24).unwrap();
        let g = sign_grid(&f, &w).unwrap();
        let mags = hessweave::topology::axis_magnitudes(&w.k, w.n);
        let (px, py) = q.signs();
        for s in 0..12 {
            let (a, b) = ((seed + 7 * s) % w.n, (seed * 3 + 11 * s) % w.n);
            let x = if px { mags[a].to_rational() } else { -mags[a].to_rational() };
            let y = if py { mags[b].to_rational() } else { -mags[b].to_rational() };
            prop_assert_eq!(g.at(a, b), f.eval_sign(&x, &y));
        }
    }

    #[test]
    fn single_ellipse(a in 1i64..=4, b in 1i64..=4, x0 in -6i64..=6, y0 in -6i64..=6, r in 1i64..=6) {
        let c = count_components(&ellipse(a, b, x0, y0, r), &int(6), 64).unwrap();
        prop_assert_eq!(c.compact_in_r2, 1);
    }

    #[test]
    fn census_respects_swapping_variables(f in nonzero_poly(3, 6)) {
        let c = count_components(&f, &int(4), 32).unwrap();
        let s = count_components(&f.swap_vars(), &int(4), 32).unwrap();
        prop_assert_eq!(c.compact_in_r2, s.compact_in_r2);
        prop_assert_eq!(c.boundary_touching, s.boundary_touching);
        let [pp, pm, mp, mm] = c.per_quadrant;
        prop_assert_eq!(s.per_quadrant, [pp, mp, pm, mm]);
    }
}

#[test]
fn product_of_disjoint_ellipses() {
    let f = ellipse(1, 1, 4, 4, 1).mul(&ellipse(2, 1, -5, 3, 2)).mul(&ellipse(1, 3, 0, -6, 3));
    let c = count_components(&f, &int(6), 128).unwrap();
    assert_eq!(c.compact_in_r2, 3);
    assert!(c.stable);
}

#[test]
fn lemma_piece_censuses_survive_two_doublings() {
    use hessweave::topology::OvalFamily;
    for fam in OvalFamily::ALL {
        let h = fam.poly().shift(Exponent::new(2, 2)).hessian();
        let a = count_components(&h, &int(6), 256).unwrap();
        let b = count_components(&h, &int(6), 512).unwrap();
        assert!(a.stable && b.stable, "{fam}");
        assert_eq!(a.compact_in_r2, 1);
        assert_eq!((a.compact_in_r2, a.per_quadrant), (b.compact_in_r2, b.per_quadrant));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn minkowski_matches_pairwise_hull(p in positive_poly(3), q in positive_poly(3)) {
        let (a, b) = (newton_polygon(&p).unwrap(), newton_polygon(&q).unwrap());
        let pairwise = Polygon::hull(a.vertices().iter().flat_map(|u| b.vertices().iter().map(move |v| u.add(*v)))).unwrap();
        prop_assert_eq!(a.minkowski_sum(&b), pairwise);
    }
}
