use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which density the histogram reports: per unit area of the plane, or per
/// unit radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityConvention {
    PerArea,
    PerRadius,
}

/// Binned empirical radial density of eigenvalue moduli.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadialHistogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub n_samples: u64,
    pub convention: DensityConvention,
}

impl RadialHistogram {
    /// Equal-area annular bins on [0, rmax]: uniform per-bin variance under
    /// a flat limiting profile.
    pub fn equal_area(bins: usize, rmax: f64) -> Result<Self> {
        if bins < 4 || !(rmax > 0.0) {
            return Err(Error::Config("histogram needs bins >= 4 and rmax > 0".into()));
        }
        let edges = (0..=bins)
            .map(|b| rmax * (b as f64 / bins as f64).sqrt())
            .collect();
        Ok(RadialHistogram {
            edges,
            counts: vec![0; bins],
            n_samples: 0,
            convention: DensityConvention::PerArea,
        })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn record(&mut self, radius: f64) {
        // equal-area edges invert in closed form
        let rmax = *self.edges.last().unwrap();
        if radius < 0.0 || radius >= rmax {
            return;
        }
        let frac = (radius / rmax).powi(2);
        let b = ((frac * self.bins() as f64) as usize).min(self.bins() - 1);
        self.counts[b] += 1;
    }

    pub fn add_sample_marker(&mut self) {
        self.n_samples += 1;
    }

    /// Empirical density at bin b under the stored convention, normalized
    /// per sample (so the per-area histogram of one ensemble's eigenvalues
    /// integrates to the mean eigenvalue count within rmax).
    pub fn density(&self, b: usize) -> f64 {
        if self.n_samples == 0 {
            return 0.0;
        }
        let width = match self.convention {
            DensityConvention::PerArea => {
                std::f64::consts::PI * (self.edges[b + 1].powi(2) - self.edges[b].powi(2))
            }
            DensityConvention::PerRadius => self.edges[b + 1] - self.edges[b],
        };
        self.counts[b] as f64 / (self.n_samples as f64 * width)
    }

    pub fn center(&self, b: usize) -> f64 {
        0.5 * (self.edges[b] + self.edges[b + 1])
    }

    /// Σ counts × annulus-area density: total mass within rmax per sample.
    pub fn total_mass(&self) -> f64 {
        if self.n_samples == 0 {
            return 0.0;
        }
        self.counts.iter().sum::<u64>() as f64 / self.n_samples as f64
    }

    /// Merge a shard (same binning) into self; counts are integers, so the
    /// merge is exact and order-independent.
    pub fn merge(&mut self, other: &RadialHistogram) -> Result<()> {
        if self.edges != other.edges {
            return Err(Error::Config("cannot merge histograms with different edges".into()));
        }
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
        self.n_samples += other.n_samples;
        Ok(())
    }
}

/// Kolmogorov–Smirnov sup-distance between a sorted sample and a continuous
/// CDF evaluated pointwise.
pub fn ks_distance<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::Domain("ks_distance of an empty sample".into()));
    }
    if sorted.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain("ks_distance requires sorted input".into()));
    }
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(((i + 1) as f64 / n - f).abs());
        d = d.max((i as f64 / n - f).abs());
    }
    Ok(d)
}

/// Two-sample KS distance (both inputs sorted).
pub fn ks_distance_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain("ks two-sample needs non-empty inputs".into()));
    }
    let (mut i, mut j, mut ks) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        let d = (i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs();
        ks = ks.max(d);
    }
    Ok(ks)
}
