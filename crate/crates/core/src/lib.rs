//! Exact construction and verification of BRST complexes for first-class
//! constrained Hamiltonian systems with polynomial constraints.

pub mod brst;
pub mod cli;
pub mod cohomology;
pub mod differentials;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod maurer_cartan;
pub mod random;
pub mod reducible;
pub mod superalgebra;
pub mod symplectic;

pub use error::{Error, Result};
