//! Monte-Carlo generation of matrix ensembles (Ginibre, induced, fixed-trace
//! projections, products) and eigenvalue-level Metropolis chains for the
//! constrained Coulomb gases, with reproducible stream-seeded RNG.

mod matrix;
mod mcmc;
mod rng;

pub use matrix::{fix_trace, sample_ginibre, sample_haar_unitary, sample_induced, sample_product, MatrixSample};
pub use mcmc::{ChainState, FteChain};
pub use rng::RngState;
