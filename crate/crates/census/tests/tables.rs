use lie2_census::iso_match;
use lie2_census::tiny::TinyTable;
use lie2_core::field::vec_from_bits;
use lie2_core::liealg::{center, is_simple, validate_lie};
use lie2_core::{Field, LieAlgebra};
use proptest::prelude::*;

/// Relabels the basis by `perm`: e_i becomes e_perm[i].
fn relabel(g: &LieAlgebra, perm: &[usize]) -> LieAlgebra {
    let n = g.dim();
    let entries: Vec<_> = g
        .nonzero_products()
        .into_iter()
        .map(|(i, j, v)| {
            let mut w = vec![0u16; n];
            for (k, c) in v.iter().enumerate() {
                w[perm[k]] = c.bits();
            }
            let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
            (a, b, vec_from_bits(&w))
        })
        .collect();
    LieAlgebra::from_table("relabelled", Field::f2(), n, &entries).unwrap()
}

fn jacobi_codes() -> Vec<u64> {
    (0..512).filter(|&c| TinyTable::from_code(3, c).is_lie()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn tiny_invariants_match_core(code in 0u64..(1 << 18)) {
        let t = TinyTable::from_code(4, code);
        let g = t.to_algebra("t");
        prop_assert_eq!(TinyTable::from_algebra(&g), Some(t));
        let lie = validate_lie(&g).is_valid();
        prop_assert_eq!(t.is_lie(), lie);
        if lie {
            prop_assert_eq!(t.center_dim(), center(&g).unwrap().dim());
            prop_assert_eq!(t.is_simple(), is_simple(&g).unwrap().simple);
        }
    }

    #[test]
    fn relabelled_jacobi_tables_match(code in prop::sample::select(jacobi_codes()), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let t = TinyTable::from_code(3, code);
        let g = t.to_algebra("t");
        let h = relabel(&g, &perm);
        prop_assert!(iso_match(&g, &h).unwrap().is_some());
    }
}
