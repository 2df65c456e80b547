use lie2_core::catalog::{fixture, fixture_f2};
use lie2_core::field::{vec_from_bits, Fe, Field};
use lie2_core::restricted::RestrictedAlgebra;
use lie2_core::toruscartan::{
    audit_decomposition, max_tori_and_rank, torus_from_toral, weight_decompose, Root, SearchMode,
    DEFAULT_ELEMENT_BUDGET, DEFAULT_NODE_BUDGET,
};
use lie2_core::{LieAlgebra, Subspace};
use proptest::prelude::*;

fn ra(name: &str) -> RestrictedAlgebra {
    fixture_f2(name).unwrap().restricted().unwrap().unwrap()
}

fn unit(n: usize, i: usize) -> Vec<Fe> {
    Field::f2().unit_vec(n, i)
}

fn rank(g: &RestrictedAlgebra) -> usize {
    max_tori_and_rank(g, DEFAULT_ELEMENT_BUDGET, DEFAULT_NODE_BUDGET).unwrap().rank_lb
}

#[test]
fn toral_ranks_of_fixtures() {
    assert_eq!(rank(&ra("gl2")), 2);
    assert_eq!(rank(&ra("sl2")), 1);
    assert_eq!(rank(&ra("gl3")), 3);
    assert_eq!(rank(&ra("sl3")), 2);
    assert_eq!(rank(&ra("heis3")), 0);
}

fn sl3_decomposition() -> (RestrictedAlgebra, lie2_core::toruscartan::CartanDecomposition) {
    let g = ra("sl3");
    let t = torus_from_toral(&g, &[unit(8, 0), unit(8, 1)]).unwrap();
    let cd = weight_decompose(&g, &t).unwrap();
    (g, cd)
}

// sl3 basis order: h1, h2, e12, e13, e21, e23, e31, e32
#[test]
fn sl3_root_spaces_over_f2() {
    let (_, cd) = sl3_decomposition();
    assert_eq!(cd.h.dim(), 2);
    assert!(cd.nil.is_zero());
    let summary: Vec<(u32, Subspace)> = cd.weights.iter().map(|(r, s)| (r.0, s.clone())).collect();
    let f = Field::f2();
    assert_eq!(
        summary,
        vec![
            (0b01, Subspace::coordinate(f, 8, &[5, 7])),
            (0b10, Subspace::coordinate(f, 8, &[2, 4])),
            (0b11, Subspace::coordinate(f, 8, &[3, 6])),
        ]
    );
}

#[test]
fn sl3_audit_triggers_d() {
    let (g, cd) = sl3_decomposition();
    let a = audit_decomposition(&g, &cd).unwrap();
    assert!(a.all_pass(), "{a:?}");
    assert!(a.d_square_transfer.checked > 0);
    assert!(a.d_square_transfer.exhaustive);
}

#[test]
fn gl3_decomposition_has_three_roots() {
    let g = ra("gl3");
    let best = max_tori_and_rank(&g, DEFAULT_ELEMENT_BUDGET, DEFAULT_NODE_BUDGET).unwrap();
    assert_eq!(best.mode, SearchMode::Exhaustive);
    let diag = torus_from_toral(&g, &[unit(9, 0), unit(9, 4), unit(9, 8)]).unwrap();
    let cd = weight_decompose(&g, &diag).unwrap();
    let roots: Vec<u32> = cd.weights.keys().map(|r| r.0).collect();
    assert_eq!(roots, vec![0b011, 0b101, 0b110]);
    assert!(cd.weights.values().all(|s| s.dim() == 2));
    assert!(audit_decomposition(&g, &cd).unwrap().all_pass());
}

#[test]
fn corrupted_bracket_fails_audit_c() {
    let g = ra("gl2");
    let t = torus_from_toral(&g, &[unit(4, 0), unit(4, 3)]).unwrap();
    let cd = weight_decompose(&g, &t).unwrap();
    let base = g.algebra();
    let mut entries: Vec<(usize, usize, Vec<Fe>)> =
        base.nonzero_products().into_iter().map(|(i, j, v)| (i, j, v.to_vec())).collect();
    for e in entries.iter_mut() {
        if (e.0, e.1) == (1, 2) {
            e.2 = vec_from_bits(&[1, 0, 0, 0]);
        }
    }
    let bad = LieAlgebra::from_table("gl2-corrupt", Field::f2(), 4, &entries).unwrap();
    let bad = RestrictedAlgebra::new_unchecked(bad, g.two_map().clone()).unwrap();
    let a = audit_decomposition(&bad, &cd).unwrap();
    assert!(!a.c_self_bracket.pass);
    assert!(a.c_self_bracket.witnesses[0].contains("root 3 pair (0, 1)"));
}

#[test]
fn grading_and_completeness_over_gf4() {
    let f = Field::new(2).unwrap();
    let g = fixture("sl3", f).unwrap().restricted().unwrap().unwrap();
    let t = torus_from_toral(&g, &[f.unit_vec(8, 0), f.unit_vec(8, 1)]).unwrap();
    let cd = weight_decompose(&g, &t).unwrap();
    let total: usize = cd.h.dim() + cd.weights.values().map(Subspace::dim).sum::<usize>();
    assert_eq!(total, 8);
    assert!(audit_decomposition(&g, &cd).unwrap().all_pass());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn brackets_respect_grading(a in 0usize..3, b in 0usize..3, xs in prop::collection::vec(0u16..2, 2), ys in prop::collection::vec(0u16..2, 2)) {
        let (g, cd) = sl3_decomposition();
        let roots: Vec<Root> = cd.weights.keys().copied().collect();
        let (l, m) = (roots[a], roots[b]);
        let sl = cd.space(l);
        let sm = cd.space(m);
        let x = sl.combine(&vec_from_bits(&xs));
        let y = sm.combine(&vec_from_bits(&ys));
        let z = g.bracket(&x, &y).unwrap();
        prop_assert!(cd.space(l.add(m)).contains_vector(&z).unwrap());
    }
}

#[test]
fn rank_witness_is_a_torus() {
    for name in ["gl2", "gl3", "sl2", "sl3", "w11_p2", "strictly_upper(3)"] {
        let g = ra(name);
        let r = max_tori_and_rank(&g, DEFAULT_ELEMENT_BUDGET, DEFAULT_NODE_BUDGET).unwrap();
        let check = lie2_core::toruscartan::is_torus(&g, &r.witness.subspace).unwrap();
        assert!(check.is_torus, "{name}");
        assert!(r.caveat.contains("lower bound"));
    }
}
