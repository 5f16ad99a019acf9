//! Self-consistent effective-oscillator approximation for anharmonic and
//! double-well oscillators.
//!
//! The interaction `λ f^k` is replaced level by level with a quadratic
//! potential of equal average; the resulting shifted oscillator gives the
//! leading-order spectrum ([`spectrum`]), which perturbation theory about
//! that oscillator improves ([`ipt`]). [`oracle`] diagonalizes the full
//! Hamiltonian in a truncated Fock basis as an independent reference.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod error;
pub mod gap;
pub mod ipt;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod spectrum;
pub mod susy;
pub mod tables;
pub mod vacuum;

pub use error::{Error, Result};
pub use model::{level_factors, LevelFactors, OscillatorSpec, Phase};
pub use spectrum::{level_solution, EffectiveSolution};
