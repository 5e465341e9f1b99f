//! Bounded cochain complexes over prime fields and the Waldhausen windows
//! they generate.

mod complex;
mod field;
mod window;

use thiserror::Error;

use crate::waldhausen::WindowError;

pub use complex::{
    cylinder_complex, homology_ranks, is_quasi_iso, normal_form, pushout_along_mono, BoundedComplex, ChainMap,
    CylinderComplex, NormalForm,
};
pub use field::{FpMatrix, PrimeField};
pub use window::{build_window, ChainWindow, DimCap, WindowCaps};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("{0} is not a supported prime")]
    NotPrime(u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d∘d is nonzero starting in degree {0}")]
    NotAComplex(i32),
    #[error("the maps do not commute with the differentials in degree {0}")]
    NotAChainMap(i32),
    #[error("the map is not levelwise injective")]
    NotMono,
    #[error("complex does not fit in degrees {lo}..{hi}")]
    Range { lo: i32, hi: i32 },
    #[error("explosion guard: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Window(#[from] WindowError),
}
