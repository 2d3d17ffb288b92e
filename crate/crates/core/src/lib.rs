//! Quantum Latin squares, Hadamard matrices and the unitary error bases they
//! generate, with numerical obstructions to basis equivalence.

pub mod catalog;
pub mod codec;
pub mod error;
pub mod group;
pub mod hadamard;
pub mod linalg;
pub mod obstruction;
pub mod properties;
pub mod qls;
pub mod repro;
pub mod sample;
pub mod ueb;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Permutation, Tolerance, C64};
