//! Censuses of small Lie algebras by structure constants.
//!
//! Over F2 with n <= 4 every bracket table is enumerated; beyond that
//! tables are sampled from a seeded counter-based stream. Jacobi is checked
//! first, simplicity on survivors, then 2-maps and toral rank on simples.

pub mod census;
pub mod iso;
pub mod tiny;

use thiserror::Error;

pub use census::{run_census, sample_census, CensusReport, CensusSpec, IsoClass, Sampling, SparseTable};
pub use iso::iso_match;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("exhaustive census needs {bits} constant bits, limit is {max}; use sampling")]
    BudgetExceeded { bits: usize, max: usize },
    #[error("isomorphism sweep supports dimension at most {max}, got {dim}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("algebra is over {0}, the sweep needs F2")]
    NotOverF2(lie2_core::Field),
    #[error("invalid census: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Field(#[from] lie2_core::field::FieldError),
    #[error(transparent)]
    Lie(#[from] lie2_core::liealg::LieError),
    #[error(transparent)]
    Restricted(#[from] lie2_core::restricted::RestrictedError),
    #[error(transparent)]
    Torus(#[from] lie2_core::toruscartan::TorusError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
