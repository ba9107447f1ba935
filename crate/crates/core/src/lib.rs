//! Adaptive-order CWENOZ reconstructions and a one-dimensional finite-volume
//! laboratory for conservation laws.

pub mod error;
pub mod grid;
pub mod harness;
pub mod physics;
pub mod polykernel;
pub mod reconstruct;
pub mod solver;

pub use error::{Error, Result};
