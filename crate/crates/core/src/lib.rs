//! Stopping-set weight distributions of binary parity-check matrices and
//! ensembles, including redundant (linearly dependent row) extensions.
//!
//! - [`gf2core`]: concrete matrices, exhaustive stopping-set search, extension.
//! - [`exactdist`]: exact average distributions of matrix ensembles.
//! - [`qlwsearch`]: counts of small generator matrices with minimum distance >= 2.
//! - [`asymptotics`]: growth rates and critical exponents.
//! - [`becsim`]: peeling decoder on the erasure channel, exact and Monte Carlo block error.

pub mod asymptotics;
pub mod becsim;
pub mod bigmath;
pub mod distribution;
mod error;
pub mod exactdist;
pub mod gf2core;
pub mod qlwsearch;

pub use distribution::WeightDistribution;
pub use error::{Error, Result};
pub use gf2core::{BinaryMatrix, SupportSet};
