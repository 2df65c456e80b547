//! Case analysis for simple Lie 2-algebras with a torus of rank 3.
//!
//! Roots and toral vectors are 3-bit masks over F2. The crate enumerates
//! root systems and dimension patterns up to GL3(F2), refutes them with
//! explicit rules, and emits certificates that `check` can replay.

pub mod certificate;
pub mod gl3;
pub mod pattern;
pub mod reference;
pub mod roots;
pub mod space;

use thiserror::Error;

pub use certificate::{
    apply_rule, check, kill_pattern, refute_root_system, Certificate, Kind, Rule, RuleMode, Soundness,
};
pub use gl3::Gl3;
pub use pattern::{enumerate_patterns, gl3_canonicalize, DimPattern};
pub use reference::{cross_check_paper_lists, verify_paper, Sections};
pub use roots::{admissible_toral_space, enumerate_root_systems, RootSystem};
pub use space::ToralSpan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("root {0} is not a nonzero vector of F2^3")]
    BadRoot(u8),
    #[error("roots {0:?} do not contain the standard basis")]
    NotNormalized(Vec<u8>),
    #[error("root {xi} is not in {system}")]
    XiNotInSystem { xi: u8, system: String },
    #[error("pattern {0} is not in canonical form")]
    NotCanonical(String),
}
