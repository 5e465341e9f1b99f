//! The homotopy category of a window by left fractions, the presentation
//! `DD*W` and its comparison with `D*W`.

mod ddstar;
mod fractions;
mod isos;
mod verify;

pub use ddstar::{iso_generator, mu_bar, nu_bar, nu_image, present_ddstar, DerivedPresented};
pub use fractions::{
    compose_fractions, fractions_equal, homotopic, strictly_homotopic, zeta, Fraction, HoMorphism, HomotopyWitness,
    ZWitness,
};
pub use isos::{check_saturation, enumerate_ho_isos, HoIso, HoIsoTable};
pub use verify::{build_comparison, verify_lemma_la, verify_theorem_el, Comparison, ElReport, LaReport};

/// Fractions are searched with a single apex inside the window.
pub const DEPTH_CAP: usize = 1;
