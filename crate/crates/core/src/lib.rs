//! Exact arithmetic for vector-valued modular forms on SL2(Z) and their
//! monic modular differential equations.

pub mod angle;
pub mod classical;
pub mod cli;
pub mod classify;
pub mod error;
pub mod frobenius;
pub mod linalg;
pub mod mmde;
pub mod modstruct;
pub mod modular_deriv;
pub mod qseries;
pub mod rat;
pub mod sample;
pub mod serial;
pub mod wronskian;

pub use error::{Error, Result};
pub use qseries::QSeries;
pub use rat::Rat;
