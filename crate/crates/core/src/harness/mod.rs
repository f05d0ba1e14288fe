//! Experiment orchestration: CLI-facing run functions, histograms, KS
//! statistics, CSV/JSON emission and the verification battery.

mod config;
mod experiments;
mod stats;
mod verify;

pub use config::{Experiment, RunConfig};
pub use experiments::{
    run_density_experiment, run_gap_experiment, run_kpoint, run_stability_experiment,
    ExperimentReport,
};
pub use stats::{ks_distance, ks_distance_two_sample, RadialHistogram};
pub use verify::{run_verify, Suite, VerifyCheck, VerifyReport};
