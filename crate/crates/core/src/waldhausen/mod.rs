//! Finite fragments of Waldhausen categories and the presentation `D*W`.

mod category;
mod dstar;
mod enumerate;
mod pointed;
mod validate;
mod wcat;
mod window;

use thiserror::Error;

use crate::squad::SquadError;

pub use category::{identity_name, CategoryBuilder, FiniteCategory, MorId, Morphism, ObjId};
pub use dstar::{cof_generator, obj_generator, present_dstar, we_generator, Presented};
pub(crate) use dstar::{common_part, we_boundary};
pub use enumerate::{
    cofiber_of, enumerate_cof_pairs, enumerate_cofiber_sequences, enumerate_we_of_cofseq, CofPair, CofPairs,
    CofiberSeq, WeOfCofSeq,
};
pub use pointed::pointed_sets_window;
pub use validate::{validate_window, WindowReport};
pub use wcat::{is_window_name, parse_wcat, write_wcat};
pub use window::{Coproduct, Cylinder, Pushout, WaldhausenWindow};

/// Default number of elementary checks allowed for a single search.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Search budget, overridable through `SQUADK_BUDGET`.
pub fn budget() -> u64 {
    std::env::var("SQUADK_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&b: &u64| b > 0)
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate entry {0}")]
    Duplicate(String),
    #[error("invalid window data: {0}")]
    Invalid(String),
    #[error("missing pushout: {0}")]
    MissingPushout(String),
    #[error("missing cylinder for {0}")]
    MissingCylinder(String),
    #[error("window-not-closed: {0}")]
    NotClosed(String),
    #[error("window exceeds the explosion guard: {0}")]
    TooLarge(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("window is not saturated: {0}")]
    Unsaturated(String),
    #[error(transparent)]
    Squad(#[from] SquadError),
}
