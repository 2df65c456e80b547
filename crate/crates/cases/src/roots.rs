//! Root systems of a rank-3 torus and their admissible toral spaces.

use serde::{Deserialize, Serialize};

use crate::gl3::Gl3;
use crate::space::ToralSpan;
use crate::CaseError;

/// Fixed root order: α, β, γ, α+β, α+γ, β+γ, α+β+γ.
pub const ROOT_ORDER: [u8; 7] = [1, 2, 4, 3, 5, 6, 7];

const ROOT_LABELS: [&str; 8] = ["0", "α", "β", "α+β", "γ", "α+γ", "β+γ", "α+β+γ"];

pub fn root_label(r: u8) -> &'static str {
    ROOT_LABELS[(r & 7) as usize]
}

/// Position of a nonzero root in `ROOT_ORDER`.
pub fn root_position(r: u8) -> usize {
    ROOT_ORDER.iter().position(|&x| x == r).expect("nonzero root")
}

/// A set of nonzero roots containing α, β and γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct RootSystem {
    mask: u8,
}

impl RootSystem {
    pub fn new(roots: &[u8]) -> Result<RootSystem, CaseError> {
        let mut mask = 0u8;
        for &r in roots {
            if r == 0 || r > 7 {
                return Err(CaseError::BadRoot(r));
            }
            mask |= 1 << r;
        }
        let s = RootSystem { mask };
        if !(s.contains(1) && s.contains(2) && s.contains(4)) {
            return Err(CaseError::NotNormalized(roots.to_vec()));
        }
        Ok(s)
    }

    /// Bit r of the mask is set iff root r belongs, r in 1..=7.
    pub fn mask(self) -> u8 {
        self.mask
    }

    pub fn contains(self, r: u8) -> bool {
        r != 0 && r < 8 && self.mask >> r & 1 == 1
    }

    /// Members in `ROOT_ORDER`.
    pub fn roots(self) -> Vec<u8> {
        ROOT_ORDER.into_iter().filter(|&r| self.contains(r)).collect()
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    /// Position in `enumerate_root_systems`.
    pub fn index(self) -> usize {
        enumerate_root_systems().iter().position(|&d| d == self).expect("every system is listed")
    }

    pub fn label(self) -> String {
        let inner: Vec<&str> = self.roots().into_iter().map(root_label).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl TryFrom<Vec<u8>> for RootSystem {
    type Error = CaseError;
    fn try_from(v: Vec<u8>) -> Result<Self, CaseError> {
        RootSystem::new(&v)
    }
}

impl From<RootSystem> for Vec<u8> {
    fn from(d: RootSystem) -> Vec<u8> {
        d.roots()
    }
}

/// Δ0 (all seven roots) followed by Δ1..Δ15 in the classical order: by
/// cardinality, then by which of α+β, α+γ, β+γ, α+β+γ are added.
pub fn enumerate_root_systems() -> Vec<RootSystem> {
    const EXTRA: [&[u8]; 16] = [
        &[3, 5, 6, 7],
        &[],
        &[3],
        &[5],
        &[6],
        &[7],
        &[3, 5],
        &[3, 6],
        &[3, 7],
        &[5, 6],
        &[5, 7],
        &[6, 7],
        &[3, 5, 6],
        &[3, 5, 7],
        &[3, 6, 7],
        &[5, 6, 7],
    ];
    let list: Vec<RootSystem> = EXTRA
        .iter()
        .map(|extra| {
            let mut roots = vec![1, 2, 4];
            roots.extend_from_slice(extra);
            RootSystem::new(&roots).expect("basis is present")
        })
        .collect();
    let mut listed: Vec<u8> = list.iter().map(|d| d.mask).collect();
    listed.sort_unstable();
    assert_eq!(listed, basis_containing_masks(), "root system list is not the set of normalized subsets");
    list
}

/// Masks of every subset of nonzero roots that contains α, β, γ, ascending.
pub fn basis_containing_masks() -> Vec<u8> {
    let basis = 1 << 1 | 1 << 2 | 1 << 4;
    (0u16..256).map(|m| m as u8).filter(|m| m & 1 == 0 && m & basis == basis).collect()
}

/// The rule behind `admissible_toral_space`, for any set of roots of a
/// rank-`rank` torus given as a mask (bit r set iff r is a root).
pub fn admissible_space(roots: u8, xi: u8, rank: u32) -> ToralSpan {
    let is_root = |r: u8| r != 0 && roots >> r & 1 == 1;
    let mut space = ToralSpan::kernel(xi, rank);
    for eta in 1..1u8 << rank {
        if is_root(eta) && eta != xi && !is_root(xi ^ eta) {
            space = space.intersect(ToralSpan::kernel(eta, rank));
        }
    }
    space
}

/// Toral directions allowed for the toral part of [g_ξ, g_ξ]: ξ vanishes
/// there, and so does every root η with ξ+η neither a root nor zero.
pub fn admissible_toral_space(d: RootSystem, xi: u8) -> Result<ToralSpan, CaseError> {
    if !d.contains(xi) {
        return Err(CaseError::XiNotInSystem { xi, system: d.label() });
    }
    Ok(admissible_space(d.mask, xi, 3))
}

/// Image of a root mask under g.
pub fn transform_mask(mask: u8, g: Gl3) -> u8 {
    (1..8u8).filter(|r| mask >> r & 1 == 1).fold(0u8, |m, r| m | 1 << g.apply(r))
}
