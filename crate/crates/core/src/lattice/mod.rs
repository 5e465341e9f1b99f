//! Exact integer linear algebra over arbitrary-precision integers.

mod group;
mod hnf;
mod matrix;
mod snf;

use thiserror::Error;

pub use group::{
    add_scaled, hom_kernel, invariant_factors, lattice_member, quotient, AbHom, CanonicalGroup, FgAbelianGroup,
    InvariantFactors,
};
pub use hnf::{integer_kernel, Lattice, TrackedEchelon};
pub use matrix::IntMatrix;
pub use snf::{smith_diagonal, smith_normal_form, SmithForm};


#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix parse error: {0}")]
    Parse(String),
    #[error("homomorphism does not respect the domain relations")]
    IllDefinedHom,
}
