//! Time-fractional first-order systems toolkit.
//!
//! The crate evaluates the Mittag-Leffler family of special functions,
//! classifies matrix symbols for fractional hyperbolicity, computes the
//! resolvent matrix-function E_α(t^α P(s)), solves the Cauchy problem on
//! periodic grids by Fourier synthesis, and verifies the exponential
//! decay of the fundamental solution outside the fractional light cone
//! {|t^{−α}x| ≤ 1}.
//!
//! The `frachyp` binary exposes the pipeline through `ml`, `classify`,
//! `solve`, `kernel`, `reduce`, and `verify` subcommands.

mod cfloat;

pub mod cli;
pub mod error;
pub mod gamma;
pub mod hyperbolicity;
pub mod linalg;
pub mod oracle;
pub mod reduction;
pub mod resolvent;
pub mod special;
pub mod spectral;
pub mod symbol;

pub use error::{Error, Result};
pub use special::{FractionalOrder, MLParams};

