//! Stable quadratic modules presented from finite Waldhausen category data.

pub mod chain;
pub mod derived;
pub mod lattice;
pub mod squad;
pub mod waldhausen;
