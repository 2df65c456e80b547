use std::collections::HashSet;

use lie2_cases::gl3::pair;
use lie2_cases::pattern::enumerate_profiles;
use lie2_cases::roots::{admissible_space, transform_mask};
use lie2_cases::*;
use proptest::prelude::*;

type M3 = [[u8; 3]; 3];

fn det(m: &M3) -> u8 {
    let t = |a: u8, b: u8| a & b;
    (t(m[0][0], t(m[1][1], m[2][2]) ^ t(m[1][2], m[2][1]))
        ^ t(m[0][1], t(m[1][0], m[2][2]) ^ t(m[1][2], m[2][0]))
        ^ t(m[0][2], t(m[1][0], m[2][1]) ^ t(m[1][1], m[2][0])))
        & 1
}

/// GL3(F2) as permutations of the 7 nonzero vectors, built from entries.
fn point_permutations() -> Vec<[u8; 8]> {
    let mut out = Vec::new();
    for code in 0u16..512 {
        let m: M3 = [0, 1, 2].map(|i| [0, 1, 2].map(|j| (code >> (3 * i + j) & 1) as u8));
        if det(&m) == 0 {
            continue;
        }
        let mut perm = [0u8; 8];
        for v in 1..8u8 {
            let coords = [v & 1, v >> 1 & 1, v >> 2 & 1];
            let mut w = 0u8;
            for i in 0..3 {
                let bit = (0..3).fold(0, |a, j| a ^ (m[i][j] & coords[j]));
                w |= bit << i;
            }
            perm[v as usize] = w;
        }
        out.push(perm);
    }
    out
}

fn cycle_lengths(perm: &[u8; 8]) -> Vec<u32> {
    let mut seen = [false; 8];
    let mut lens = Vec::new();
    for s in 1..8usize {
        if !seen[s] {
            let (mut x, mut len) = (s, 0);
            while !seen[x] {
                seen[x] = true;
                x = perm[x] as usize;
                len += 1;
            }
            lens.push(len);
        }
    }
    lens
}

/// Ways to give every cycle a positive dimension with Σ len·dim = sum.
fn fixed_count(lens: &[u32], sum: u32) -> u64 {
    let mut ways = vec![0u64; sum as usize + 1];
    ways[0] = 1;
    for &l in lens {
        let mut next = vec![0u64; sum as usize + 1];
        for (s, &w) in ways.iter().enumerate() {
            let mut k = 1;
            while s as u32 + l * k <= sum {
                next[s + (l * k) as usize] += w;
                k += 1;
            }
        }
        ways = next;
    }
    ways[sum as usize]
}

fn burnside(total: u32) -> u64 {
    let perms = point_permutations();
    assert_eq!(perms.len(), 168);
    let mut n = 0;
    for d_n in 0..=total.saturating_sub(10) {
        let s: u64 = perms.iter().map(|p| fixed_count(&cycle_lengths(p), total - 3 - d_n)).sum();
        assert_eq!(s % 168, 0);
        n += s / 168;
    }
    n
}

#[test]
fn orbit_counts_match_burnside() {
    let frozen = [1, 2, 4, 8, 15, 26, 45];
    for (i, dim) in (10..=16).enumerate() {
        let pats = enumerate_patterns(dim);
        assert_eq!(pats.len() as u64, burnside(dim), "dim {dim}");
        assert_eq!(pats.len(), frozen[i], "dim {dim}");
        assert!(pats.iter().all(|p| p.is_canonical() && p.total() == dim));
        assert_eq!(pats.iter().collect::<HashSet<_>>().len(), pats.len());
    }
    let profiles: Vec<usize> = (10..=16).map(|d| enumerate_profiles(d).len()).collect();
    assert_eq!(profiles, vec![1, 2, 4, 7, 12, 19, 30]);
    assert!(enumerate_patterns(9).is_empty());
}

#[test]
fn total_thirteen_orbits_listed() {
    let got: Vec<String> = enumerate_patterns(13).iter().map(|p| p.to_string()).collect();
    assert_eq!(
        got,
        vec![
            "(13:3,0,4,1,1,1,1,1,1)",
            "(13:3,0,3,2,1,1,1,1,1)",
            "(13:3,0,2,2,2,1,1,1,1)",
            "(13:3,0,2,2,1,2,1,1,1)",
            "(13:3,1,3,1,1,1,1,1,1)",
            "(13:3,1,2,2,1,1,1,1,1)",
            "(13:3,2,2,1,1,1,1,1,1)",
            "(13:3,3,1,1,1,1,1,1,1)",
        ]
    );
}

fn arb_pattern() -> impl Strategy<Value = DimPattern> {
    (0u32..4, prop::array::uniform7(1u32..4)).prop_map(|(d_n, dims)| DimPattern::new(d_n, dims).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_an_orbit_invariant(p in arb_pattern(), gi in 0usize..168) {
        let g = Gl3::all()[gi];
        let c = gl3_canonicalize(&p);
        prop_assert_eq!(gl3_canonicalize(&c), c);
        prop_assert_eq!(gl3_canonicalize(&p.transform(g)), c);
        prop_assert_eq!(c.total(), p.total());
        prop_assert_eq!(c.profile(), p.profile());
    }

    #[test]
    fn admissible_spaces_are_equivariant(di in 0usize..16, ri in 0usize..7, gi in 0usize..168) {
        let g = Gl3::all()[gi];
        let d = enumerate_root_systems()[di];
        let roots = d.roots();
        let xi = roots[ri % roots.len()];
        let moved = admissible_space(transform_mask(d.mask(), g), g.apply(xi), 3);
        prop_assert_eq!(moved, admissible_toral_space(d, xi).unwrap().transform(g));
    }

    #[test]
    fn rank_status_is_orbit_invariant(di in 0usize..16, gi in 0usize..168) {
        let g = Gl3::all()[gi];
        let d = enumerate_root_systems()[di];
        let mask = d.mask();
        let rank = |m: u8| {
            let roots: Vec<u8> = (1..8u8).filter(|r| m >> r & 1 == 1).collect();
            roots.iter().fold(ToralSpan::zero(), |s, &x| s.sum(admissible_space(m, x, 3))).dim()
        };
        prop_assert_eq!(rank(mask), rank(transform_mask(mask, g)));
        prop_assert_eq!(Some(rank(mask)), refute_root_system(d).rank);
    }

    #[test]
    fn iso_witness_conditions(p in arb_pattern()) {
        if let Some(c) = apply_rule(Rule::R4, &p) {
            if let lie2_cases::certificate::Witnesses::Iso { xi, t_star, eta, .. } = c.witnesses {
                let t = t_star[0] | t_star[1] << 1 | t_star[2] << 2;
                prop_assert!(!pair(xi, t) && pair(eta, t));
            }
        } else {
            prop_assert!(p.dims.iter().all(|&d| d == p.dims[0]));
        }
    }
}
