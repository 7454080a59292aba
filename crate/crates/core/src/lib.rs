//! Quadrature noise of squeezed light after multiple scattering.
//!
//! A disordered medium couples `2N` input modes (N transmitted-side, N
//! reflected-side) into one monitored output mode. The crate models the
//! inputs as Gaussian states, samples the coupling row of the medium, and
//! evaluates output quadrature variances with and without wavefront shaping
//! (every transmission coefficient replaced by its modulus).
//!
//! - [`gaussian`]: first/second moment representation of multimode states.
//! - [`medium`]: disorder realizations, wavefront shaping, quadrature forms.
//! - [`analytic`]: closed-form ensemble averages used as oracles.
//! - [`montecarlo`]: deterministic parallel ensembles and parameter sweeps.
//! - [`beamsplitter`]: the two-port balanced beam splitter limit.
//! - [`cli`]: the `wfs-noise` command line (`sweep`, `bs`, `check`).
//!
//! Quadratures are `x = a† + a`, `p = i(a† − a)`, so the vacuum (shot-noise
//! level) has unit variance.

pub mod analytic;
pub mod beamsplitter;
pub mod cli;
mod error;
pub mod gaussian;
pub mod medium;
pub mod montecarlo;
pub mod stats;

pub use error::{Error, Result};
