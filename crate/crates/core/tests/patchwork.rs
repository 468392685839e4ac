use hessweave::newton::{truncate_on, Cell};
use hessweave::patchwork::{
    assemble, census_at, complete_layout, paper_layout, select_t, solve_heights, twisted_layout, verify_hessian_gluing,
    CountSettings, Mode, PatchworkError,
};
use hessweave::ratpoly::rat;

#[test]
fn assembly_round_trip() {
    for d in 4..=6 {
        let l = complete_layout(&paper_layout(d, Mode::Literal).unwrap()).unwrap();
        let q = assemble(&l, &solve_heights(&l).unwrap()).unwrap();
        for p in &l.pieces {
            assert_eq!(
                truncate_on(&q, &Cell::full(p.cell.polygon.clone())).unwrap(),
                p.poly,
                "d={d} {}",
                p.cell.polygon
            );
        }
        assert_eq!(q.total_degree().unwrap(), 2 * d - 2);
    }
}

#[test]
fn gluing_on_small_layouts() {
    for d in 4..=5 {
        let l = complete_layout(&paper_layout(d, Mode::Literal).unwrap()).unwrap();
        let q = assemble(&l, &solve_heights(&l).unwrap()).unwrap();
        let r = verify_hessian_gluing(&q).unwrap();
        assert!(r.pass, "d={d}");
        assert!(r.eligible_count() >= l.non_filler_count());
    }
}

#[test]
fn simplex_mode_fills_the_triangle() {
    let l = complete_layout(&paper_layout(4, Mode::Simplex).unwrap()).unwrap();
    assert_eq!(l.non_filler_count(), 0);
    assert_eq!(l.pieces.len(), 16);
    let q = assemble(&l, &solve_heights(&l).unwrap()).unwrap();
    assert_eq!(q.total_degree().unwrap(), 4);
}

#[test]
fn twisted_layout_is_rejected_with_edges() {
    match solve_heights(&twisted_layout()) {
        Err(PatchworkError::Infeasible { edges }) => assert!(!edges.is_empty()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn one_more_refinement_keeps_the_census() {
    let l = complete_layout(&paper_layout(4, Mode::Literal).unwrap()).unwrap();
    let q = assemble(&l, &solve_heights(&l).unwrap()).unwrap();
    let cfg = CountSettings::default();
    let s = select_t(&q, 4, &cfg).unwrap();
    assert_eq!(s.census.compact_in_r2, 4);
    assert_eq!(s.t, rat(1, 4));
    let beyond = &s.t * &s.t * &s.t * &s.t;
    let (_, c) = census_at(&q, &beyond, &cfg).unwrap();
    assert_eq!(c.compact_in_r2, s.census.compact_in_r2);
    assert_eq!(c.per_quadrant, s.census.per_quadrant);
}
