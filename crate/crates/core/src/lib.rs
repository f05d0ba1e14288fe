//! Finite-N eigenvalue statistics of fixed-trace and product Ginibre ensembles.
//!
//! The library evaluates the closed-form spectral quantities of complex
//! (induced) Ginibre matrices with and without a fixed-trace constraint —
//! partition functions, densities, k-point correlators, gap probabilities,
//! permanental radial densities, product-ensemble Meijer-G densities and
//! stability-exponent limits — and provides matrix-level and MCMC samplers
//! to verify every formula against Monte Carlo.
//!
//! Module map:
//! - [`specfun`]: log-safe scalar special functions (gamma family, Bessel K,
//!   Kummer U, permanents, signed log-sum-exp).
//! - [`transforms`]: Meijer G via Mellin–Barnes contour quadrature, forward
//!   numerical Laplace transform, fixed-Talbot inverse Laplace transform.
//! - [`analytic`]: all finite-N closed forms.
//! - [`sampler`]: reproducible matrix sampling and Coulomb-gas MCMC.
//! - [`eig`]: dense complex eigensolver and log-scaled product spectra.
//! - [`harness`]: experiments, statistics, CSV/JSON reports and the
//!   verification battery.

pub mod analytic;
pub mod eig;
mod error;
pub mod harness;
pub mod sampler;
pub mod specfun;
pub mod transforms;

pub use error::{Error, Result};
