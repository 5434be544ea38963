//! Exact linear algebra over ℤ/ℓ^N.
//!
//! Every ℓ-adic quantity in the crate lives in ℤ/ℓ^N for a configurable
//! precision N. A diagonal entry whose valuation reaches N is reported as
//! free at that precision; nothing here claims freeness over ℤ_ℓ itself.

mod matrix;
mod scalar;

pub use matrix::{Diagonalization, ModuleStructure, PadicMatrix};
pub use scalar::{PadicContext, PadicScalar, DEFAULT_PRECISION};
pub(crate) use scalar::is_prime;
