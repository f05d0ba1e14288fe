use serde::{Deserialize, Serialize};

use crate::analytic::{EnsembleKind, EnsembleParams};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Density,
    Gap,
    Kpoint,
    Stability,
    Verify,
}

/// Full experiment configuration; the CLI mirrors this and a JSON config
/// file supplies defaults that flags override.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub kind: EnsembleKind,
    #[serde(flatten)]
    pub ensemble: EnsembleParams,
    pub samples: u64,
    pub seed: u64,
    pub bins: usize,
    pub workers: usize,
    pub output_path: Option<String>,
    /// Gap experiment: largest radius of the grid.
    pub xmax: Option<f64>,
    /// Gap experiment: number of grid radii.
    pub grid: Option<usize>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 1 {
            return Err(Error::Config("samples must be >= 1".into()));
        }
        if self.bins < 4 {
            return Err(Error::Config("bins must be >= 4".into()));
        }
        if self.workers < 1 {
            return Err(Error::Config("workers must be >= 1".into()));
        }
        self.ensemble.validate(self.kind)
    }

    /// Samples per worker stream: fixed chunking by stream id, so the merge
    /// order (and thus every emitted artifact) is deterministic.
    pub fn shard_sizes(&self) -> Vec<u64> {
        let w = self.workers as u64;
        let base = self.samples / w;
        let extra = self.samples % w;
        (0..w).map(|i| base + u64::from(i < extra)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> RunConfig {
        RunConfig {
            experiment: Experiment::Density,
            kind: EnsembleKind::GinibreFte,
            ensemble: EnsembleParams::single_fte(4, 0.0, 1.0),
            samples: 10,
            seed: 1,
            bins: 8,
            workers: 3,
            output_path: None,
            xmax: None,
            grid: None,
        }
    }

    #[test]
    fn shard_sizes_partition_samples() {
        let cfg = config();
        let shards = cfg.shard_sizes();
        assert_eq!(shards, vec![4, 3, 3]);
        assert_eq!(shards.iter().sum::<u64>(), 10);
    }

    #[test]
    fn validation_catches_bad_configs() {
        let mut cfg = config();
        cfg.bins = 2;
        assert!(cfg.validate().is_err());
        let mut cfg = config();
        cfg.samples = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = config();
        cfg.ensemble.nu = vec![-2.0];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let cfg = config();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back.samples, cfg.samples);
        assert_eq!(back.kind, cfg.kind);
        assert_eq!(back.ensemble.n, 4);
    }
}
