//! Scalar special functions in log-safe form.
//!
//! Everything the ensemble formulas need: the gamma family (real and
//! complex log-gamma, digamma, regularized incomplete gamma), modified
//! Bessel K, Kummer U, generalized binomials, the Ryser permanent and a
//! signed log-sum-exp built on [`LogReal`].
//!
//! All functions are pure; gamma functions are only ever consumed through
//! log differences so that exponents like N² + Nν stay representable.

mod bessel;
mod gamma;
mod incgamma;
mod kummer;
mod log_real;
mod permanent;

pub use bessel::bessel_k;
pub use gamma::{digamma, log_binomial, log_gamma, log_gamma_complex, log_gamma_ratio};
pub use incgamma::{exp_gamma_q_complex, upper_incomplete_gamma_regularized};
pub use kummer::{kummer_u, kummer_u_ln};
pub use log_real::{log_sum_exp, LogReal, LogSumAcc};
pub use permanent::{permanent, permanent_complex};
