use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which formula family applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleKind {
    /// Single induced Ginibre matrix with Tr GG† pinned to s.
    GinibreFte,
    /// Single induced Gaussian normal matrix with Tr GG† pinned to s.
    NormalFte,
    /// Single induced Ginibre matrix at inverse variance t.
    InducedGinibre,
    /// Product of M unconstrained induced Ginibre matrices.
    ProductGinibre,
    /// Product of m fixed-trace and M−m unconstrained factors.
    MixedProduct,
}

impl EnsembleKind {
    pub fn is_fixed_trace(self) -> bool {
        matches!(self, EnsembleKind::GinibreFte | EnsembleKind::NormalFte)
    }
}

/// Full specification of a (possibly mixed) product ensemble: matrix size N,
/// M factors of which the first m carry trace constraints s_j, the rest
/// inverse variances t_j, and per-factor charges ν_j > −1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnsembleParams {
    pub n: usize,
    pub factors: usize,
    pub fixed: usize,
    pub nu: Vec<f64>,
    pub s: Vec<f64>,
    pub t: Vec<f64>,
}

impl EnsembleParams {
    pub fn single_fte(n: usize, nu: f64, s: f64) -> Self {
        EnsembleParams { n, factors: 1, fixed: 1, nu: vec![nu], s: vec![s], t: vec![] }
    }

    pub fn induced(n: usize, nu: f64, t: f64) -> Self {
        EnsembleParams { n, factors: 1, fixed: 0, nu: vec![nu], s: vec![], t: vec![t] }
    }

    pub fn product(n: usize, nu: Vec<f64>, t: Vec<f64>) -> Self {
        EnsembleParams { n, factors: nu.len(), fixed: 0, nu, s: vec![], t }
    }

    pub fn mixed(n: usize, nu: Vec<f64>, s: Vec<f64>, t: Vec<f64>) -> Self {
        EnsembleParams { n, factors: nu.len(), fixed: s.len(), nu, s, t }
    }

    pub fn validate(&self, kind: EnsembleKind) -> Result<()> {
        if self.nu.len() != self.factors
            || self.s.len() != self.fixed
            || self.t.len() != self.factors - self.fixed
        {
            return Err(Error::Config(format!(
                "parameter lengths inconsistent: M={}, m={}, |nu|={}, |s|={}, |t|={}",
                self.factors,
                self.fixed,
                self.nu.len(),
                self.s.len(),
                self.t.len()
            )));
        }
        if self.nu.iter().any(|&v| v <= -1.0) {
            return Err(Error::Config("all nu_j must exceed -1".into()));
        }
        if self.s.iter().chain(self.t.iter()).any(|&v| v <= 0.0) {
            return Err(Error::Config("all s_j and t_j must be positive".into()));
        }
        let constrained = kind.is_fixed_trace()
            || (kind == EnsembleKind::MixedProduct && self.fixed >= 1);
        if constrained && self.n < 2 {
            return Err(Error::Config(
                "fixed-trace ensembles need N > 1; a single eigenvalue is pinned by the constraint"
                    .into(),
            ));
        }
        if self.n < 1 {
            return Err(Error::Config("N must be at least 1".into()));
        }
        match kind {
            EnsembleKind::GinibreFte | EnsembleKind::NormalFte => {
                if self.factors != 1 || self.fixed != 1 {
                    return Err(Error::Config("fixed-trace kinds require M = m = 1".into()));
                }
            }
            EnsembleKind::InducedGinibre => {
                if self.factors != 1 || self.fixed != 0 {
                    return Err(Error::Config("induced Ginibre requires M = 1, m = 0".into()));
                }
            }
            EnsembleKind::ProductGinibre => {
                if self.fixed != 0 || self.factors < 1 {
                    return Err(Error::Config("product kind requires m = 0, M >= 1".into()));
                }
            }
            EnsembleKind::MixedProduct => {
                // m = 0 is admitted so the reduction to the pure product
                // formula stays checkable through the same entry point
                if self.factors < self.fixed || self.factors < 1 {
                    return Err(Error::Config("mixed product requires 0 <= m <= M, M >= 1".into()));
                }
            }
        }
        Ok(())
    }

    /// Product of all inverse variances (τ).
    pub fn tau(&self) -> f64 {
        self.t.iter().product()
    }

    /// Product of all trace constraints.
    pub fn s_prod(&self) -> f64 {
        self.s.iter().product()
    }

    /// Effective trace exponent: N² + Nν for the Ginibre family,
    /// N(N+1)/2 + Nν for the normal family.
    pub fn trace_exponent(&self, kind: EnsembleKind) -> f64 {
        let n = self.n as f64;
        let nu = self.nu[0];
        match kind {
            EnsembleKind::NormalFte => 0.5 * n * (n + 1.0) + n * nu,
            _ => n * n + n * nu,
        }
    }
}

/// Evaluation points for a k-point correlator, k = points.len().
#[derive(Clone, Debug)]
pub struct CorrelatorQuery {
    pub points: Vec<Complex64>,
}

impl CorrelatorQuery {
    pub fn new(points: Vec<Complex64>) -> Self {
        CorrelatorQuery { points }
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn validate(&self, kind: EnsembleKind, p: &EnsembleParams) -> Result<()> {
        let k = self.k();
        if k == 0 {
            return Err(Error::Config("correlator query needs at least one point".into()));
        }
        if k > p.n {
            return Err(Error::Config(format!("k = {k} exceeds N = {}", p.n)));
        }
        if kind == EnsembleKind::NormalFte && k > p.n - 1 {
            return Err(Error::Config(
                "the normal fixed-trace joint density carries only N-1 free eigenvalues; k <= N-1"
                    .into(),
            ));
        }
        Ok(())
    }
}
