//! Exact, small-register quantum metrology workbench.
//!
//! The crate evaluates Fisher information for spin ensembles from first
//! principles: pure-state quantum Fisher information, classical information of
//! concrete measurements, the counting comparison against the standard quantum
//! limit, Ramsey fringe simulation and Monte-Carlo Cramér–Rao checks.
//!
//! Units use ħ = 1. A generator `H` is multiplied by the signal `θ`, so the
//! evolution is `exp(−iθtH)`.

pub mod bounds;
pub mod error;
pub mod estimate;
pub mod fisher;
pub mod qcore;
pub mod ramsey;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
