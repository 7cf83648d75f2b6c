//! Channel spin-1 states built from a polarized spin-1/2 beam and target.
//!
//! The crate constructs the triplet projection of `ρ(1) ⊗ ρ(2)`, decides its
//! entanglement with the covariance-matrix criterion (cross-checked by the
//! partial transpose) and computes the Majorana constellation of each
//! eigenvector of the resulting spin-1 density matrix.

pub mod channel_state;
pub mod cli_io;
pub mod entanglement;
mod error;
pub mod majorana;
pub mod spin_algebra;

pub use error::{Error, Result};
