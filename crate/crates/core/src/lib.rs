//! Restricted Lie algebras in characteristic 2.
//!
//! Everything is exact: fields are GF(2^k) with k <= 16, vectors are
//! `Vec<Fe>` in a fixed basis, and subspaces are kept in reduced
//! row-echelon form.

pub mod catalog;
pub mod field;
pub mod io;
pub mod liealg;
pub mod matrix;
pub mod restricted;
pub mod subspace;
pub mod toruscartan;

pub use field::{Fe, Field};
pub use liealg::LieAlgebra;
pub use matrix::Mat;
pub use restricted::{RestrictedAlgebra, TwoMap};
pub use subspace::Subspace;
