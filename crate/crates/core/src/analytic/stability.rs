
use super::params::EnsembleParams;
use crate::specfun::{digamma, log_gamma, LogReal, LogSumAcc};
use crate::transforms::{meijer_g_contour_log, ContourConfig, MeijerSpec};
use crate::{Error, Result};

/// Deterministic large-M peak locations of the stability exponents,
/// {ψ(k+1)/2 : k = 0…N−1}, ascending.
pub fn stability_peaks(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Domain("stability_peaks requires N >= 1".into()));
    }
    (1..=n).map(|k| Ok(digamma(k as f64)? * 0.5)).collect()
}

/// Finite-M density of the stability exponent μ = ln|z| / M for a product
/// of m fixed-trace and M−m plain Ginibre factors at ν_j = 0, s_j = t_j = 1.
///
/// ρ(μ) = 2M Γ(N²)^m Σ_{k<N} G^{M,0}_{m,M}(N²,…; k+1,… | e^{2Mμ}) / Γ(k+1)^M,
/// the angular factor 2π included so that ∫ ρ dμ = N.
pub fn stability_density_finite_m(p: &EnsembleParams, mu: f64) -> Result<f64> {
    if p.nu.iter().any(|&v| v != 0.0) {
        return Err(Error::Domain("stability density is defined at nu_j = 0".into()));
    }
    if p.s.iter().chain(p.t.iter()).any(|&v| v != 1.0) {
        return Err(Error::Domain(
            "stability density assumes the rescaled ensemble s_j = t_j = 1".into(),
        ));
    }
    let n = p.n;
    let m_tot = p.factors as f64;
    let m_fix = p.fixed;
    let nf = n as f64;
    let two_m_mu = 2.0 * m_tot * mu;
    if two_m_mu > 690.0 {
        return Ok(0.0); // argument beyond representable e^{2Mμ}; density long dead
    }
    let x = two_m_mu.exp();
    let a_top: Vec<f64> = (0..m_fix).map(|_| nf * nf).collect();
    let cfg = ContourConfig::default();
    let mut acc = LogSumAcc::new();
    for k in 0..n {
        let kf = k as f64;
        let ln_g = if m_fix == 0 && p.factors == 1 {
            // G^{1,0}_{0,1}(k+1 | x) = x^{k+1} e^{-x}
            LogReal::from_ln((kf + 1.0) * two_m_mu - x)
        } else {
            let spec = MeijerSpec::new(a_top.clone(), vec![kf + 1.0; p.factors])?;
            meijer_g_contour_log(&spec, x, &cfg)?
        };
        if ln_g.is_zero() {
            continue;
        }
        acc.add(LogReal::new(
            ln_g.sign,
            ln_g.log_abs - m_tot * log_gamma(kf + 1.0)?,
        ));
    }
    let total = acc.total();
    if total.is_zero() || total.sign < 0 {
        return Ok(0.0);
    }
    let mut ln_pref = (2.0 * m_tot).ln();
    for _ in 0..m_fix {
        ln_pref += log_gamma(nf * nf)?;
    }
    Ok((ln_pref + total.log_abs).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_gamma() -> f64 {
        let n = 200.0f64;
        let mut h = 0.0;
        for k in 1..=200 {
            h += 1.0 / k as f64;
        }
        h - n.ln() - 0.5 / n + 1.0 / (12.0 * n * n) - 1.0 / (120.0 * n.powi(4))
    }

    #[test]
    fn peaks_small_n() {
        let g = euler_gamma();
        let p1 = stability_peaks(1).unwrap();
        assert!((p1[0] + g / 2.0).abs() < 1e-12);
        let p2 = stability_peaks(2).unwrap();
        assert!((p2[0] + g / 2.0).abs() < 1e-12);
        assert!((p2[1] - (1.0 - g) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn peaks_strictly_increasing() {
        for n in [1usize, 3, 8, 20] {
            let peaks = stability_peaks(n).unwrap();
            for w in peaks.windows(2) {
                assert!(w[1] > w[0]);
            }
        }
    }

    #[test]
    fn single_ginibre_density() {
        // M = 1, N = 1: ρ(μ) = 2 e^{2μ} e^{-e^{2μ}}; at μ=0: 2/e
        let p = EnsembleParams::product(1, vec![0.0], vec![1.0]);
        let v = stability_density_finite_m(&p, 0.0).unwrap();
        assert!((v - 2.0 / std::f64::consts::E).abs() < 1e-12, "{v}");
        let v = stability_density_finite_m(&p, 0.3).unwrap();
        let expect = 2.0 * (0.6f64).exp() * (-(0.6f64).exp()).exp();
        assert!((v - expect).abs() < 1e-12);
    }

    #[test]
    fn integrates_to_n() {
        // M = 3, N = 3, m = 0: ∫ρ dμ = N by Simpson; the left tail decays
        // only like e^{2Mμ}, so the window reaches to −5
        let p = EnsembleParams::product(3, vec![0.0; 3], vec![1.0; 3]);
        let (lo, hi) = (-5.0f64, 1.8f64);
        let n = 680usize;
        let h = (hi - lo) / n as f64;
        let mut acc = 0.0;
        for i in 0..=n {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += w * stability_density_finite_m(&p, lo + i as f64 * h).unwrap();
        }
        acc *= h / 3.0;
        assert!((acc - 3.0).abs() < 1e-6, "integral {acc}");
    }

    #[test]
    fn fixed_trace_factor_peak_near_prediction() {
        // m = 1, N = 2, M = 40: lowest peak within 0.05 of ψ(1)/2
        let p = EnsembleParams::mixed(2, vec![0.0; 40], vec![1.0], vec![1.0; 39]);
        let target = stability_peaks(2).unwrap()[0];
        let mut best_mu = f64::NAN;
        let mut best = -1.0;
        let mut mu = target - 0.12;
        while mu <= target + 0.12 {
            let v = stability_density_finite_m(&p, mu).unwrap();
            if v > best {
                best = v;
                best_mu = mu;
            }
            mu += 0.005;
        }
        assert!(
            (best_mu - target).abs() < 0.05,
            "peak at {best_mu}, predicted {target}"
        );
    }

    #[test]
    fn rejects_wrong_parameterization() {
        let p = EnsembleParams::product(2, vec![1.0], vec![1.0]);
        assert!(stability_density_finite_m(&p, 0.0).is_err());
        let p = EnsembleParams::product(2, vec![0.0], vec![2.0]);
        assert!(stability_density_finite_m(&p, 0.0).is_err());
    }

    #[test]
    fn normalization_constant_is_two_pi_per_density() {
        // consistency with the plane density: ρ(μ) = 2π · M e^{2Mμ} R(z)|_{|z|=e^{Mμ}}
        let p = EnsembleParams::product(2, vec![0.0, 0.0], vec![1.0, 1.0]);
        let mu = -0.2f64;
        let r = (2.0f64 * mu).exp(); // M=2: |z| = e^{Mμ}
        let rho = stability_density_finite_m(&p, mu).unwrap();
        let dens = crate::analytic::density(
            crate::analytic::EnsembleKind::ProductGinibre,
            &p,
            num_complex::Complex64::new(r, 0.0),
        )
        .unwrap();
        let expect = 2.0 * std::f64::consts::PI * 2.0 * (2.0f64 * 2.0 * mu).exp() * dens;
        assert!((rho - expect).abs() < 1e-9 * expect.abs(), "{rho} vs {expect}");
    }
}
