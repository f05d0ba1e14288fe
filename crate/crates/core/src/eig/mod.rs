//! Dense complex eigenvalue computation and log-scaled product spectra.

mod qr;
mod spectrum;

pub use qr::eigenvalues;
pub use spectrum::{product_log_moduli, product_spectrum, spectrum, Spectrum};
