//! Presented stable quadratic modules (squads) and their homotopy groups.

mod engine;
mod expr;
mod format;
mod morphism;
pub(crate) mod nil2;

use thiserror::Error;

use crate::lattice::LatticeError;

pub use engine::{C0Element, C1Element, Pi1, Squad, SquadElement};
pub use expr::{Dim, Expr1, GenSym, Letter, SquadPresentation, Word0};
pub use format::{is_valid_name, parse_expr, parse_sqpres, parse_word, write_sqpres};
pub use morphism::{MorphismViolation, SquadMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquadError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown {dim:?}-dimensional generator '{name}'")]
    UnknownSymbol { name: String, dim: Dim },
    #[error("duplicate generator '{0}'")]
    DuplicateGenerator(String),
    #[error("degree-1 relations with nontrivial boundary: {}", .0.join("; "))]
    IllFormed(Vec<String>),
    #[error("elements of different dimensions")]
    DimensionMismatch,
    #[error("kernel computation failed: {0}")]
    UnresolvedKernel(String),
    #[error("not a morphism: {}", .0.join("; "))]
    InvalidMorphism(Vec<String>),
    #[error("integer overflow in group arithmetic")]
    Overflow,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
