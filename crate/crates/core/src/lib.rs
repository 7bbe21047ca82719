//! Minimum spectral gap of adiabatic optimization over Hamming-weight
//! cost functions with a barrier, computed three ways: exact
//! diagonalization of the symmetric subspace, a continuous
//! parabolic-cylinder model solved at arbitrary precision, and large-`n`
//! closed forms. [`analysis`] classifies the resulting `g_min(n)` series.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod asymptotic;
pub mod cli;
pub mod continuous;
pub mod discrete;
pub mod error;
pub mod optimize;
pub mod record;
pub mod specfun;

pub use error::{Error, Result};
pub use record::{GapRecord, Method};
pub use specfun::PrecisionPolicy;
