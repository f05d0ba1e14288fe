//! Finite-N closed forms: partition functions, spectral densities, k-point
//! correlators, kernels, gap probabilities, joint and radial joint
//! densities, and stability-exponent predictions for fixed-trace and
//! product (induced) Ginibre ensembles.

mod density;
mod gap;
mod joint;
mod kpoint;
mod params;
mod partition;
mod stability;

pub use density::{density, density_fte_alt, density_mixed_kummer, limiting_density, plane_integral};
pub use gap::{gap_fte, gap_ginibre};
pub use joint::{joint_log_density, radial_joint_density};
pub use kpoint::{ginibre_kernel, kpoint, product_kernel};
pub use params::{CorrelatorQuery, EnsembleKind, EnsembleParams};
pub use partition::{log_partition, log_volume_coset};
pub use stability::{stability_density_finite_m, stability_peaks};
