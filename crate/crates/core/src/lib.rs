//! Numerical core for four-qubit GHZ-class dephasing under fractional
//! Gaussian noise.
//!
//! Everything in this crate is a pure function of its inputs and builds
//! without `std` (only `alloc` is required). Randomness is always supplied
//! by the caller as an explicit generator.
//!
//! Module map:
//!
//! - [`densemat`]: small dense complex matrices, Hermitian Jacobi eigensolver,
//!   partial transpose.
//! - [`noise`]: the accumulated phase variance of fractional Gaussian noise,
//!   its quadrature oracle, Gaussian phase draws and fBm path sampling.
//! - [`channels`]: channel partitions, the Werner-GHZ initial state, the exact
//!   noise-averaged map and its Monte Carlo counterpart.
//! - [`measures`]: witness, negativities, purity, von Neumann entropy.
//! - [`closedform`]: reference closed-form witness and purity curves.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod channels;
pub mod closedform;
pub mod densemat;
mod error;
pub mod measures;
pub mod noise;

pub use error::{Error, Result};

/// Number of qubits in the simulated register.
pub const QUBITS: usize = 4;
/// Hilbert-space dimension, `2^QUBITS`.
pub const DIM: usize = 1 << QUBITS;
