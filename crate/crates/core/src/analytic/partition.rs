use std::f64::consts::PI;

use super::params::{EnsembleKind, EnsembleParams};
use crate::specfun::log_gamma;
use crate::Result;

/// ln V_N, the volume of the unitary coset U(N)/U(1)^N:
/// V_N = π^{N(N−1)/2} / Π_{j=0}^{N} j!.
pub fn log_volume_coset(n: usize) -> Result<f64> {
    let nf = n as f64;
    let mut log_fact = 0.0;
    for j in 0..=n {
        log_fact += log_gamma(j as f64 + 1.0)?;
    }
    Ok(0.5 * nf * (nf - 1.0) * PI.ln() - log_fact)
}

fn log_norm_product(n: usize, nu: f64) -> Result<f64> {
    // Σ_{j=0}^{N-1} ln Γ(j+1+ν)
    let mut acc = 0.0;
    for j in 0..n {
        acc += log_gamma(j as f64 + 1.0 + nu)?;
    }
    Ok(acc)
}

/// Natural log of the partition function of the requested ensemble.
pub fn log_partition(kind: EnsembleKind, p: &EnsembleParams) -> Result<f64> {
    p.validate(kind)?;
    let n = p.n;
    let nf = n as f64;
    let log_vn = log_volume_coset(n)?;
    let log_nfact = log_gamma(nf + 1.0)?;
    match kind {
        EnsembleKind::GinibreFte => {
            let nu = p.nu[0];
            let e = nf * nf + nf * nu;
            Ok(log_vn + 0.5 * nf * (nf + 1.0) * PI.ln() + log_nfact + log_norm_product(n, nu)?
                - log_gamma(e)?
                + (e - 1.0) * p.s[0].ln())
        }
        EnsembleKind::NormalFte => {
            let nu = p.nu[0];
            let e = 0.5 * nf * (nf + 1.0) + nf * nu;
            Ok(log_vn + nf * PI.ln() + log_nfact + log_norm_product(n, nu)?
                - log_gamma(e)?
                + (e - 1.0) * p.s[0].ln())
        }
        EnsembleKind::InducedGinibre => {
            let nu = p.nu[0];
            let e = nf * nf + nf * nu;
            Ok(log_vn + 0.5 * nf * (nf + 1.0) * PI.ln() + log_nfact + log_norm_product(n, nu)?
                - e * p.t[0].ln())
        }
        EnsembleKind::ProductGinibre | EnsembleKind::MixedProduct => {
            let m_tot = p.factors;
            let m_fix = p.fixed;
            let mut acc = (m_tot as f64) * (log_vn + log_nfact)
                + 0.5 * (m_tot as f64) * nf * (nf + 1.0) * PI.ln();
            for j in 0..m_tot {
                acc += log_norm_product(n, p.nu[j])?;
                let e_j = nf * nf + nf * p.nu[j];
                if j < m_fix {
                    acc += (e_j - 1.0) * p.s[j].ln() - log_gamma(e_j)?;
                } else {
                    acc -= e_j * p.t[j - m_fix].ln();
                }
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_volume_small_n() {
        // V_2 = π / (0! 1! 2!) = π/2
        let v2 = log_volume_coset(2).unwrap().exp();
        assert!((v2 - PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn fte_partition_n2() {
        // Z_{δ,0}(1) at N=2: V_2 π³ · 2!·Γ(1)Γ(2)/Γ(4) = V_2 π³ / 3
        let p = EnsembleParams::single_fte(2, 0.0, 1.0);
        let got = log_partition(EnsembleKind::GinibreFte, &p).unwrap();
        let expect = (PI / 2.0 * PI.powi(3) / 3.0).ln();
        assert!((got - expect).abs() < 1e-12, "{got} vs {expect}");
    }

    #[test]
    fn fte_s_scaling() {
        // Z scales as s^{N²+Nν-1}
        for (n, nu) in [(2usize, 0.0), (5, 1.0), (4, 0.5)] {
            let p1 = EnsembleParams::single_fte(n, nu, 1.0);
            let p2 = EnsembleParams::single_fte(n, nu, 2.0);
            let d = log_partition(EnsembleKind::GinibreFte, &p2).unwrap()
                - log_partition(EnsembleKind::GinibreFte, &p1).unwrap();
            let e = (n * n) as f64 + n as f64 * nu;
            assert!((d - (e - 1.0) * 2.0f64.ln()).abs() < 1e-10);
        }
    }

    #[test]
    fn induced_t_scaling() {
        // Z scales as t^{-(N²+Nν)}
        let p1 = EnsembleParams::induced(3, 1.0, 1.0);
        let p2 = EnsembleParams::induced(3, 1.0, 2.0);
        let d = log_partition(EnsembleKind::InducedGinibre, &p2).unwrap()
            - log_partition(EnsembleKind::InducedGinibre, &p1).unwrap();
        assert!((d + 12.0 * 2.0f64.ln()).abs() < 1e-11);
    }

    #[test]
    fn product_partition_factorizes() {
        // M independent unconstrained factors multiply
        let p = EnsembleParams::product(3, vec![0.0, 1.0], vec![1.0, 2.0]);
        let z = log_partition(EnsembleKind::ProductGinibre, &p).unwrap();
        let z1 = log_partition(EnsembleKind::InducedGinibre, &EnsembleParams::induced(3, 0.0, 1.0))
            .unwrap();
        let z2 = log_partition(EnsembleKind::InducedGinibre, &EnsembleParams::induced(3, 1.0, 2.0))
            .unwrap();
        assert!((z - z1 - z2).abs() < 1e-10);
    }

    #[test]
    fn mixed_partition_is_laplace_image_of_product() {
        // the s_j dependence replaces t_j^{-E} by s_j^{E-1}/Γ(E)
        let pm = EnsembleParams::mixed(3, vec![0.0, 1.0], vec![1.5], vec![2.0]);
        let zm = log_partition(EnsembleKind::MixedProduct, &pm).unwrap();
        let zfte = log_partition(
            EnsembleKind::GinibreFte,
            &EnsembleParams::single_fte(3, 0.0, 1.5),
        )
        .unwrap();
        let zind = log_partition(
            EnsembleKind::InducedGinibre,
            &EnsembleParams::induced(3, 1.0, 2.0),
        )
        .unwrap();
        assert!((zm - zfte - zind).abs() < 1e-10);
    }

    #[test]
    fn rejects_invalid_params() {
        let p = EnsembleParams::single_fte(1, 0.0, 1.0);
        assert!(log_partition(EnsembleKind::GinibreFte, &p).is_err());
        let p = EnsembleParams::single_fte(3, -1.5, 1.0);
        assert!(log_partition(EnsembleKind::GinibreFte, &p).is_err());
    }
}
