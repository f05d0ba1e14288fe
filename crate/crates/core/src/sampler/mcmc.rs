use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::analytic::{joint_log_density, EnsembleKind, EnsembleParams};
use crate::specfun::LogReal;
use crate::{Error, Result};

/// Eigenvalue-gas configuration of a running chain.
#[derive(Clone, Debug)]
pub struct ChainState {
    pub eigenvalues: Vec<Complex64>,
    pub log_density: LogReal,
    pub accepted: u64,
    pub proposed: u64,
}

impl ChainState {
    pub fn acceptance_rate(&self) -> f64 {
        if self.proposed == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }
}

/// Metropolis sampler of the fixed-trace joint eigenvalue densities: the
/// only route to real ν and to the normal fixed-trace ensemble.
///
/// Ginibre kind: single-eigenvalue Gaussian moves inside the hard
/// constraint. Normal kind: constraint-preserving pair moves that shift
/// squared radius between two eigenvalues (symmetric in r² coordinates, so
/// no Jacobian correction is owed) plus independent phase jitter, keeping
/// Σ|z|² = s exact to rounding.
pub struct FteChain {
    kind: EnsembleKind,
    params: EnsembleParams,
    pub state: ChainState,
    prop_scale: f64,
    rng: ChaCha8Rng,
}

impl FteChain {
    pub fn new(
        kind: EnsembleKind,
        params: EnsembleParams,
        rng: ChaCha8Rng,
    ) -> Result<Self> {
        if !matches!(kind, EnsembleKind::GinibreFte | EnsembleKind::NormalFte) {
            return Err(Error::Unsupported("MCMC covers the fixed-trace kinds".into()));
        }
        params.validate(kind)?;
        let mut chain = FteChain {
            kind,
            params,
            state: ChainState {
                eigenvalues: vec![],
                log_density: LogReal::ZERO,
                accepted: 0,
                proposed: 0,
            },
            prop_scale: 0.0,
            rng,
        };
        chain.init()?;
        Ok(chain)
    }

    fn init(&mut self) -> Result<()> {
        let n = self.params.n;
        let s = self.params.s[0];
        // spread starting radii so Σ|z|² = s (normal) or < s (Ginibre)
        let shrink = if self.kind == EnsembleKind::GinibreFte { 0.7 } else { 1.0 };
        let r = (s * shrink / n as f64).sqrt();
        let zs: Vec<Complex64> = (0..n)
            .map(|i| {
                let phi =
                    2.0 * std::f64::consts::PI * (i as f64 + 0.13 * self.rng.random::<f64>())
                        / n as f64;
                Complex64::from_polar(r, phi)
            })
            .collect();
        let ld = joint_log_density(self.kind, &self.params, &zs)?;
        if ld.is_zero() {
            return Err(Error::Domain("degenerate start configuration".into()));
        }
        self.state.eigenvalues = zs;
        self.state.log_density = ld;
        self.prop_scale = 0.3 * (s / n as f64).sqrt();
        Ok(())
    }

    /// One proposal; returns whether it was accepted.
    fn step(&mut self) -> bool {
        self.state.proposed += 1;
        match self.kind {
            EnsembleKind::GinibreFte => self.step_ginibre(),
            EnsembleKind::NormalFte => self.step_normal(),
            _ => unreachable!(),
        }
    }

    fn step_ginibre(&mut self) -> bool {
        let n = self.params.n;
        let i = self.rng.random_range(0..n);
        let dx: f64 = StandardNormal.sample(&mut self.rng);
        let dy: f64 = StandardNormal.sample(&mut self.rng);
        let old = self.state.eigenvalues[i];
        let cand = old + Complex64::new(dx * self.prop_scale, dy * self.prop_scale);
        self.state.eigenvalues[i] = cand;
        let ld = match joint_log_density(self.kind, &self.params, &self.state.eigenvalues) {
            Ok(v) => v,
            Err(_) => LogReal::ZERO,
        };
        if self.accept(ld) {
            true
        } else {
            self.state.eigenvalues[i] = old;
            false
        }
    }

    fn step_normal(&mut self) -> bool {
        let n = self.params.n;
        let i = self.rng.random_range(0..n);
        let mut j = self.rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let (zi, zj) = (self.state.eigenvalues[i], self.state.eigenvalues[j]);
        let (ri2, rj2) = (zi.norm_sqr(), zj.norm_sqr());
        // symmetric transfer in squared-radius coordinates
        let amp = 0.5 * self.prop_scale * self.prop_scale + 0.1 * (ri2 + rj2);
        let delta = (2.0 * self.rng.random::<f64>() - 1.0) * amp;
        let (ni2, nj2) = (ri2 + delta, rj2 - delta);
        if ni2 <= 0.0 || nj2 <= 0.0 {
            return false;
        }
        let jitter = 0.6 * self.prop_scale;
        let phi_i = zi.arg() + jitter * {
            let g: f64 = StandardNormal.sample(&mut self.rng);
            g
        };
        let phi_j = zj.arg() + jitter * {
            let g: f64 = StandardNormal.sample(&mut self.rng);
            g
        };
        let (old_i, old_j) = (self.state.eigenvalues[i], self.state.eigenvalues[j]);
        self.state.eigenvalues[i] = Complex64::from_polar(ni2.sqrt(), phi_i);
        self.state.eigenvalues[j] = Complex64::from_polar(nj2.sqrt(), phi_j);
        let ld = match joint_log_density(self.kind, &self.params, &self.state.eigenvalues) {
            Ok(v) => v,
            Err(_) => LogReal::ZERO,
        };
        if self.accept(ld) {
            true
        } else {
            self.state.eigenvalues[i] = old_i;
            self.state.eigenvalues[j] = old_j;
            false
        }
    }

    fn accept(&mut self, cand: LogReal) -> bool {
        if cand.is_zero() {
            return false;
        }
        let cur = self.state.log_density;
        let ok = cand.log_abs >= cur.log_abs
            || self.rng.random::<f64>().ln() < cand.log_abs - cur.log_abs;
        if ok {
            self.state.log_density = cand;
            self.state.accepted += 1;
        }
        ok
    }

    /// One sweep = N proposals.
    pub fn sweep(&mut self) {
        for _ in 0..self.params.n {
            self.step();
        }
    }

    /// Warm-up with proposal-scale tuning toward ~0.35 acceptance.
    pub fn warm_up(&mut self, sweeps: usize) {
        let batch = 20.max(sweeps / 25);
        let mut done = 0;
        while done < sweeps {
            let start_acc = self.state.accepted;
            let start_prop = self.state.proposed;
            for _ in 0..batch {
                self.sweep();
            }
            done += batch;
            let rate = (self.state.accepted - start_acc) as f64
                / (self.state.proposed - start_prop).max(1) as f64;
            if rate > 0.45 {
                self.prop_scale *= 1.25;
            } else if rate < 0.25 {
                self.prop_scale *= 0.8;
            }
        }
        self.state.accepted = 0;
        self.state.proposed = 0;
    }

    /// Runs `count` recorded configurations, `thin` sweeps apart, streaming
    /// each recorded eigenvalue set to the callback.
    pub fn run<F: FnMut(&[Complex64])>(&mut self, count: usize, thin: usize, mut f: F) {
        for _ in 0..count {
            for _ in 0..thin.max(1) {
                self.sweep();
            }
            f(&self.state.eigenvalues);
        }
    }

    /// Recompute and refresh the cached log density (consistency assertion).
    pub fn refresh_log_density(&mut self) -> Result<f64> {
        let ld = joint_log_density(self.kind, &self.params, &self.state.eigenvalues)?;
        let drift = (ld.log_abs - self.state.log_density.log_abs).abs();
        self.state.log_density = ld;
        Ok(drift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::RngState;

    #[test]
    fn normal_chain_preserves_the_sphere() {
        let p = EnsembleParams::single_fte(4, 1.0, 2.0);
        let mut chain =
            FteChain::new(EnsembleKind::NormalFte, p, RngState::new(11, 0).rng()).unwrap();
        chain.warm_up(200);
        for _ in 0..500 {
            chain.sweep();
            let sum: f64 = chain.state.eigenvalues.iter().map(|z| z.norm_sqr()).sum();
            assert!((sum - 2.0).abs() < 1e-10, "constraint drift: {sum}");
        }
    }

    #[test]
    fn acceptance_rate_lands_in_window() {
        for kind in [EnsembleKind::GinibreFte, EnsembleKind::NormalFte] {
            let p = EnsembleParams::single_fte(4, 0.5, 1.0);
            let mut chain = FteChain::new(kind, p, RngState::new(12, 0).rng()).unwrap();
            chain.warm_up(600);
            for _ in 0..400 {
                chain.sweep();
            }
            let rate = chain.state.acceptance_rate();
            assert!(
                (0.2..=0.6).contains(&rate),
                "{kind:?} acceptance {rate} outside window"
            );
        }
    }

    #[test]
    fn cached_log_density_stays_consistent() {
        let p = EnsembleParams::single_fte(3, 0.0, 1.0);
        let mut chain =
            FteChain::new(EnsembleKind::GinibreFte, p, RngState::new(13, 0).rng()).unwrap();
        chain.warm_up(100);
        for _ in 0..50 {
            chain.sweep();
        }
        let drift = chain.refresh_log_density().unwrap();
        assert!(drift < 1e-9, "cached density drifted by {drift}");
    }

    #[test]
    fn two_chains_agree_in_distribution() {
        // ergodicity proxy: KS between pooled radial samples of two chains
        // started from dispersed scales
        let p = EnsembleParams::single_fte(4, 0.5, 1.0);
        let mut radii_a: Vec<f64> = vec![];
        let mut radii_b: Vec<f64> = vec![];
        let mut chain_a =
            FteChain::new(EnsembleKind::GinibreFte, p.clone(), RngState::new(14, 0).rng())
                .unwrap();
        let mut chain_b =
            FteChain::new(EnsembleKind::GinibreFte, p, RngState::new(14, 7).rng()).unwrap();
        // disperse chain b before warm-up
        for z in chain_b.state.eigenvalues.iter_mut() {
            *z *= Complex64::new(0.3, 0.0);
        }
        chain_b.state.log_density = LogReal::from_ln(-1e9); // force re-accept
        chain_a.warm_up(400);
        chain_b.warm_up(400);
        chain_a.run(4000, 3, |zs| radii_a.extend(zs.iter().map(|z| z.norm())));
        chain_b.run(4000, 3, |zs| radii_b.extend(zs.iter().map(|z| z.norm())));
        radii_a.sort_by(|a, b| a.partial_cmp(b).unwrap());
        radii_b.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // two-sample KS
        let (mut i, mut j, mut ks) = (0usize, 0usize, 0.0f64);
        while i < radii_a.len() && j < radii_b.len() {
            if radii_a[i] <= radii_b[j] {
                i += 1;
            } else {
                j += 1;
            }
            let d = (i as f64 / radii_a.len() as f64 - j as f64 / radii_b.len() as f64).abs();
            ks = ks.max(d);
        }
        assert!(ks < 0.02, "two-chain KS {ks}");
    }
}
