//! Dimension patterns (total: d_t, d_n, seven root dimensions) up to GL3(F2).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gl3::Gl3;
use crate::roots::{root_position, ROOT_ORDER};

pub const TORUS_DIM: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternParseError {
    #[error("pattern {0:?} is not of the form (total:d_t,d_n,...)")]
    Syntax(String),
    #[error("pattern {text:?} has {found} entries after the colon, expected 9")]
    WrongLength { text: String, found: usize },
    #[error("pattern {text:?} states total {stated} but its entries sum to {computed}")]
    TotalMismatch { text: String, stated: u32, computed: u32 },
    #[error("pattern {text:?} has toral dimension {found}, expected 3")]
    ToralDim { text: String, found: u32 },
    #[error("pattern {0:?} has a root of dimension 0")]
    ZeroRoot(String),
}

/// `dims[i]` is the dimension of the root space of `ROOT_ORDER[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DimPattern {
    pub d_n: u32,
    pub dims: [u32; 7],
}

impl DimPattern {
    pub fn new(d_n: u32, dims: [u32; 7]) -> Option<DimPattern> {
        dims.iter().all(|&d| d >= 1).then_some(DimPattern { d_n, dims })
    }

    pub fn total(&self) -> u32 {
        TORUS_DIM + self.d_n + self.dims.iter().sum::<u32>()
    }

    pub fn dim_of(&self, root: u8) -> u32 {
        self.dims[root_position(root)]
    }

    /// The pattern whose root g·r carries the dimension of r.
    pub fn transform(&self, g: Gl3) -> DimPattern {
        let mut dims = [0u32; 7];
        for (i, &r) in ROOT_ORDER.iter().enumerate() {
            dims[root_position(g.apply(r))] = self.dims[i];
        }
        DimPattern { d_n: self.d_n, dims }
    }

    pub fn is_canonical(&self) -> bool {
        gl3_canonicalize(self) == *self
    }

    /// Root dimensions sorted in decreasing order.
    pub fn profile(&self) -> [u32; 7] {
        let mut p = self.dims;
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    fn sort_key(&self) -> (u32, std::cmp::Reverse<[u32; 7]>) {
        (self.d_n, std::cmp::Reverse(self.dims))
    }
}

impl fmt::Display for DimPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{},{}", self.total(), TORUS_DIM, self.d_n)?;
        for d in self.dims {
            write!(f, ",{d}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for DimPattern {
    type Err = PatternParseError;

    fn from_str(text: &str) -> Result<DimPattern, PatternParseError> {
        let syntax = || PatternParseError::Syntax(text.to_string());
        let inner = text.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(syntax)?;
        let (total, rest) = inner.split_once(':').ok_or_else(syntax)?;
        let total: u32 = total.trim().parse().map_err(|_| syntax())?;
        let entries: Vec<u32> =
            rest.split(',').map(|e| e.trim().parse::<u32>()).collect::<Result<_, _>>().map_err(|_| syntax())?;
        if entries.len() != 9 {
            return Err(PatternParseError::WrongLength { text: text.to_string(), found: entries.len() });
        }
        if entries[0] != TORUS_DIM {
            return Err(PatternParseError::ToralDim { text: text.to_string(), found: entries[0] });
        }
        let computed: u32 = entries.iter().sum();
        if computed != total {
            return Err(PatternParseError::TotalMismatch { text: text.to_string(), stated: total, computed });
        }
        let mut dims = [0u32; 7];
        dims.copy_from_slice(&entries[2..]);
        DimPattern::new(entries[1], dims).ok_or_else(|| PatternParseError::ZeroRoot(text.to_string()))
    }
}

impl TryFrom<String> for DimPattern {
    type Error = PatternParseError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<DimPattern> for String {
    fn from(p: DimPattern) -> String {
        p.to_string()
    }
}

/// The lexicographically greatest dimension tuple in the GL3(F2)-orbit.
pub fn gl3_canonicalize(p: &DimPattern) -> DimPattern {
    Gl3::all().iter().map(|&g| p.transform(g)).max().expect("group is nonempty")
}

/// Compositions of `sum` into `parts` positive integers, lexicographic.
fn compositions(sum: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if sum == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=sum.saturating_sub(parts as u32 - 1) {
        for mut tail in compositions(sum - first, parts - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Canonical representatives of every pattern of the given total, ordered by
/// d_n ascending and then by root dimensions descending.
pub fn enumerate_patterns(total_dim: u32) -> Vec<DimPattern> {
    let min = TORUS_DIM + 7;
    if total_dim < min {
        return Vec::new();
    }
    let mut out: Vec<DimPattern> = (0..=total_dim - min)
        .into_par_iter()
        .flat_map_iter(|d_n| {
            let reps: BTreeSet<DimPattern> = compositions(total_dim - TORUS_DIM - d_n, 7)
                .into_iter()
                .map(|c| {
                    let mut dims = [0u32; 7];
                    dims.copy_from_slice(&c);
                    gl3_canonicalize(&DimPattern { d_n, dims })
                })
                .collect();
            reps.into_iter()
        })
        .collect();
    out.sort_by_key(DimPattern::sort_key);
    out
}

/// Distinct (d_n, sorted root dimensions) pairs of the given total; these are
/// the patterns one gets when root spaces are only normalized by sorting.
pub fn enumerate_profiles(total_dim: u32) -> Vec<(u32, [u32; 7])> {
    let set: BTreeSet<(u32, std::cmp::Reverse<[u32; 7]>)> =
        enumerate_patterns(total_dim).iter().map(|p| (p.d_n, std::cmp::Reverse(p.profile()))).collect();
    set.into_iter().map(|(d, p)| (d, p.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let p: DimPattern = "(13:3,0,4,1,1,1,1,1,1)".parse().unwrap();
        assert_eq!(p.d_n, 0);
        assert_eq!(p.dims[0], 4);
        assert_eq!(p.to_string(), "(13:3,0,4,1,1,1,1,1,1)");
        assert_eq!("(10: 3,0,1,1,1,1,1,1,1)".parse::<DimPattern>().unwrap().total(), 10);
        assert!(matches!(
            "(13:3,1,1,1,1,1,1,1)".parse::<DimPattern>(),
            Err(PatternParseError::WrongLength { found: 8, .. })
        ));
        assert!(matches!("(14:3,0,1,1,1,1,1,1,1)".parse::<DimPattern>(), Err(PatternParseError::TotalMismatch { .. })));
        assert!("(10:3,0,0,1,1,1,1,1,2)".parse::<DimPattern>().is_err());
    }

    #[test]
    fn canonical_forms() {
        let ones = DimPattern::new(0, [1; 7]).unwrap();
        assert_eq!(gl3_canonicalize(&ones), ones);
        let p = DimPattern::new(0, [1, 2, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(gl3_canonicalize(&p).dims, [2, 1, 1, 1, 1, 1, 1]);
        let ab = DimPattern::new(0, [2, 2, 1, 1, 1, 1, 1]).unwrap();
        let a_ab = DimPattern::new(0, [2, 1, 1, 2, 1, 1, 1]).unwrap();
        assert_eq!(gl3_canonicalize(&ab), gl3_canonicalize(&a_ab));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(9, 7).len(), 28);
        assert_eq!(compositions(7, 7).len(), 1);
        assert!(compositions(6, 7).is_empty());
    }
}
