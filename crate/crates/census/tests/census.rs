use lie2_census::tiny::TinyTable;
use lie2_census::{iso_match, run_census, sample_census, CensusError, CensusSpec};
use lie2_core::catalog::fixture_f2;
use lie2_core::field::{vec_from_bits, Field};
use lie2_core::liealg::{is_simple, validate_lie};
use lie2_core::LieAlgebra;

#[test]
fn small_dimensions_have_no_simples() {
    for n in 1..=2 {
        let r = run_census(&CensusSpec::exhaustive(n)).unwrap();
        assert_eq!(r.candidates_scanned, 1 << (n * n * (n - 1) / 2));
        assert_eq!(r.simple_count, 0);
    }
}

#[test]
fn dimension_three_census() {
    let r = run_census(&CensusSpec::exhaustive(3)).unwrap();
    assert_eq!(r.candidates_scanned, 512);
    assert_eq!(r.jacobi_pass, 120);
    assert_eq!(r.simple_count, 28);
    assert_eq!(r.restrictable_simple_count, 0);
    let classes = r.simple_iso_classes.as_ref().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0].members, 28);
    assert!(!classes[0].restrictable);
    assert!(r.restrictable_simple_count <= r.simple_count && r.simple_count <= r.jacobi_pass);
}

/// Slow path: general bracket, all triples and random vectors.
#[test]
fn dimension_three_slow_path_agrees() {
    let f = Field::f2();
    let o3 = fixture_f2("o3").unwrap().algebra;
    let (mut lie, mut simple) = (0, 0);
    for code in 0u64..512 {
        let mut entries = Vec::new();
        for (p, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            let bits: Vec<u16> = (0..3).map(|k| (code >> (3 * p + k) & 1) as u16).collect();
            entries.push((i, j, vec_from_bits(&bits)));
        }
        let g = LieAlgebra::from_table("slow", f, 3, &entries).unwrap();
        if !validate_lie(&g).is_valid() {
            continue;
        }
        lie += 1;
        if is_simple(&g).unwrap().simple {
            simple += 1;
            assert!(iso_match(&g, &o3).unwrap().is_some());
        }
    }
    assert_eq!((lie, simple), (120, 28));
}

#[test]
fn census_ignores_thread_count() {
    let one = run_census(&CensusSpec::exhaustive(3).with_threads(1)).unwrap();
    let three = run_census(&CensusSpec::exhaustive(3).with_threads(3)).unwrap();
    assert_eq!(one.deterministic(), three.deterministic());
    let s1 = sample_census(&CensusSpec::sampled(5, 1, 40_000, 42).with_threads(1)).unwrap();
    let s2 = sample_census(&CensusSpec::sampled(5, 1, 40_000, 42).with_threads(2)).unwrap();
    assert_eq!(s1.deterministic(), s2.deterministic());
    assert!(!s1.exhaustive);
    assert_eq!(s1.candidates_scanned, 40_000);
    assert!(s1.caveat.contains("sampled"));
}

#[test]
fn sampling_over_an_extension_field() {
    let a = sample_census(&CensusSpec::sampled(3, 2, 3000, 7)).unwrap();
    let b = sample_census(&CensusSpec::sampled(3, 2, 3000, 7)).unwrap();
    assert_eq!(a.deterministic(), b.deterministic());
    assert!(a.simple_iso_classes.is_none());
    assert!(a.jacobi_pass >= a.simple_count);
    assert_eq!(a.restrictable_simple_count, 0);
}

#[test]
fn spec_limits() {
    assert!(matches!(run_census(&CensusSpec::exhaustive(5)), Err(CensusError::BudgetExceeded { bits: 50, .. })));
    let mut spec = CensusSpec::exhaustive(3);
    spec.field_degree = 2;
    assert!(matches!(run_census(&spec), Err(CensusError::InvalidSpec(_))));
    assert!(sample_census(&CensusSpec::sampled(7, 1, 10, 1)).is_err());
}

#[test]
fn iso_match_examples() {
    let o3 = fixture_f2("o3").unwrap().algebra;
    let swapped = TinyTable::from_pairs(3, &{
        let t = TinyTable::from_algebra(&o3).unwrap();
        let perm = |m: u8| (m & 0b100) | (m & 1) << 1 | (m >> 1 & 1);
        // new basis e2, e1, e3
        [perm(t.basis_bracket(1, 0)), perm(t.basis_bracket(1, 2)), perm(t.basis_bracket(0, 2))]
    })
    .to_algebra("o3-swapped");
    let w = iso_match(&o3, &swapped).unwrap().unwrap();
    assert_eq!(w.rank(), 3);
    let heis = fixture_f2("heis3").unwrap().algebra;
    // basis z, x, y
    let moved = TinyTable::from_pairs(3, &[0, 0, 0b001]).to_algebra("heis3-moved");
    assert_ne!(TinyTable::from_algebra(&moved), TinyTable::from_algebra(&heis));
    assert!(iso_match(&heis, &moved).unwrap().is_some());
    assert!(iso_match(&o3, &heis).unwrap().is_none());
    let big = fixture_f2("abelian(5)").unwrap().algebra;
    assert!(matches!(iso_match(&big, &big), Err(CensusError::DimensionTooLarge { dim: 5, .. })));
}

/// Structure-constant Jacobi count, c[i][j][k] = coefficient of e_k in [e_i, e_j].
fn jacobi_count_by_constants(n: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let bits = pairs.len() * n;
    let mut count = 0;
    for code in 0u64..1 << bits {
        let mut c = [[[0u8; 4]; 4]; 4];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            for k in 0..n {
                let b = (code >> (p * n + k) & 1) as u8;
                c[i][j][k] = b;
                c[j][i][k] = b;
            }
        }
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    (0..n).all(|m| {
                        let mut s = 0u8;
                        for l in 0..n {
                            s ^= c[j][k][l] & c[i][l][m];
                            s ^= c[k][i][l] & c[j][l][m];
                            s ^= c[i][j][l] & c[k][l][m];
                        }
                        s == 0
                    })
                })
            })
        });
        count += u64::from(ok);
    }
    count
}

#[test]
fn dimension_four_census() {
    let r = run_census(&CensusSpec::exhaustive(4).with_threads(1)).unwrap();
    assert_eq!(r.candidates_scanned, 1 << 24);
    assert_eq!(r.jacobi_pass, jacobi_count_by_constants(4));
    assert_eq!(r.jacobi_pass, 34336);
    assert_eq!(r.simple_count, 0);
    assert_eq!(r.restrictable_rank3_count, 0);
    let r2 = run_census(&CensusSpec::exhaustive(4).with_threads(2)).unwrap();
    assert_eq!(r.deterministic(), r2.deterministic());
    assert_eq!(jacobi_count_by_constants(3), 120);
}
