use num_complex::Complex64;

use super::params::{EnsembleKind, EnsembleParams};
use crate::specfun::{permanent, LogReal};
use crate::{Error, Result};

const RADIAL_N_CAP: usize = 6;

/// Unnormalised log joint eigenvalue density for the M = 1 kinds, i.e. the
/// Coulomb-gas integrand: charge term 2ν Σ ln|z_i|, pair repulsion
/// Σ_{i≠j} ln|z_i−z_j|, plus the kind's confinement — the collective
/// (N(N−1)/2 − 1)·ln(s−Σ|z|²) with its hard constraint for the fixed-trace
/// Ginibre, −t Σ|z|² for the unconstrained ensemble, and nothing for the
/// normal fixed-trace kind, whose value is reported on the constraint
/// sphere Σ|z|² = s with the delta factor dropped.
///
/// Configuration-independent normalisation constants (coset volume, powers
/// of π, 1/Γ factors) are omitted throughout; MCMC ratios and the radial
/// consistency checks are unaffected.
pub fn joint_log_density(
    kind: EnsembleKind,
    p: &EnsembleParams,
    zs: &[Complex64],
) -> Result<LogReal> {
    p.validate(kind)?;
    if zs.len() != p.n {
        return Err(Error::Dimension(format!(
            "expected {} eigenvalues, got {}",
            p.n,
            zs.len()
        )));
    }
    let nu = p.nu[0];
    let mut ln = 0.0f64;
    // Coulomb repulsion; coincident points carry zero density
    for i in 0..zs.len() {
        for j in (i + 1)..zs.len() {
            let d = (zs[j] - zs[i]).norm();
            if d == 0.0 {
                return Ok(LogReal::ZERO);
            }
            ln += 2.0 * d.ln();
        }
    }
    if nu != 0.0 {
        for z in zs {
            let r = z.norm();
            if r == 0.0 {
                return Ok(if nu > 0.0 {
                    LogReal::ZERO
                } else {
                    LogReal::from_ln(f64::INFINITY)
                });
            }
            ln += 2.0 * nu * r.ln();
        }
    }
    let sum_r2: f64 = zs.iter().map(|z| z.norm_sqr()).sum();
    match kind {
        EnsembleKind::GinibreFte => {
            let s = p.s[0];
            if sum_r2 >= s {
                return Ok(LogReal::ZERO);
            }
            let nf = p.n as f64;
            ln += (0.5 * nf * (nf - 1.0) - 1.0) * (s - sum_r2).ln();
        }
        EnsembleKind::NormalFte => {}
        EnsembleKind::InducedGinibre => {
            ln -= p.t[0] * sum_r2;
        }
        _ => {
            return Err(Error::Unsupported(
                "joint density is provided for the single-matrix kinds only".into(),
            ))
        }
    }
    Ok(LogReal::from_ln(ln))
}

/// Joint density of the eigenvalue radii (same normalisation convention as
/// [`joint_log_density`]): (2π)^N Π_j r_j · Per[r_k^{2(l+ν−1)}] times the
/// kind's confinement factor. N ≤ 6 (permanent cost).
pub fn radial_joint_density(
    kind: EnsembleKind,
    p: &EnsembleParams,
    radii: &[f64],
) -> Result<f64> {
    p.validate(kind)?;
    let n = p.n;
    if radii.len() != n {
        return Err(Error::Dimension(format!("expected {} radii, got {}", n, radii.len())));
    }
    if n > RADIAL_N_CAP {
        return Err(Error::Budget(format!(
            "radial joint density capped at N <= {RADIAL_N_CAP}"
        )));
    }
    if radii.iter().any(|&r| r < 0.0) {
        return Err(Error::Domain("radii must be non-negative".into()));
    }
    let nu = p.nu[0];
    // permanent of [r_k^{2(l+ν−1)}], rows k = radii, columns l = 1..N
    let mut entries = vec![0.0f64; n * n];
    for (k, &r) in radii.iter().enumerate() {
        for l in 1..=n {
            let expo = 2.0 * (l as f64 + nu - 1.0);
            entries[k * n + l - 1] = if r == 0.0 {
                if expo == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                r.powf(expo)
            };
        }
    }
    let per = permanent(&entries, n)?;
    let mut val = (2.0 * std::f64::consts::PI).powi(n as i32) * per;
    for &r in radii {
        val *= r;
    }
    let sum_r2: f64 = radii.iter().map(|r| r * r).sum();
    match kind {
        EnsembleKind::GinibreFte => {
            let s = p.s[0];
            if sum_r2 >= s {
                return Ok(0.0);
            }
            let nf = n as f64;
            val *= (s - sum_r2).powf(0.5 * nf * (nf - 1.0) - 1.0);
        }
        EnsembleKind::NormalFte => {}
        EnsembleKind::InducedGinibre => {
            val *= (-p.t[0] * sum_r2).exp();
        }
        _ => {
            return Err(Error::Unsupported(
                "radial joint density is provided for the single-matrix kinds only".into(),
            ))
        }
    }
    Ok(val)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn fte_zero_outside_constraint() {
        let p = EnsembleParams::single_fte(2, 0.0, 1.0);
        let zs = [Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.7)];
        assert!(joint_log_density(EnsembleKind::GinibreFte, &p, &zs).unwrap().is_zero());
    }

    #[test]
    fn coincident_eigenvalues_vanish() {
        let p = EnsembleParams::induced(2, 0.0, 1.0);
        let zs = [Complex64::new(0.3, 0.1), Complex64::new(0.3, 0.1)];
        assert!(joint_log_density(EnsembleKind::InducedGinibre, &p, &zs).unwrap().is_zero());
    }

    #[test]
    fn induced_direct_value() {
        // N=2, ν=0, t=1, zs=(0,1): ln|0−1|² − 1 = −1
        let p = EnsembleParams::induced(2, 0.0, 1.0);
        let zs = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let v = joint_log_density(EnsembleKind::InducedGinibre, &p, &zs).unwrap();
        assert_eq!(v.sign, 1);
        assert!((v.log_abs + 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_radius_with_positive_charge() {
        let p = EnsembleParams::single_fte(2, 1.0, 1.0);
        assert_eq!(radial_joint_density(EnsembleKind::GinibreFte, &p, &[0.0, 0.5]).unwrap(), 0.0);
    }

    #[test]
    fn fte_radial_zero_outside_constraint() {
        let p = EnsembleParams::single_fte(2, 0.0, 1.0);
        assert_eq!(radial_joint_density(EnsembleKind::GinibreFte, &p, &[0.8, 0.7]).unwrap(), 0.0);
    }

    #[test]
    fn radial_matches_angle_integrated_joint_n2() {
        // 2D angular trapezoid of exp(joint) times the r₁r₂ Jacobian
        let p = EnsembleParams::induced(2, 0.0, 1.0);
        let (r1, r2) = (1.0, 1.0);
        let m = 400usize;
        let h = 2.0 * PI / m as f64;
        let mut acc = 0.0;
        for i in 0..m {
            let phi1 = i as f64 * h;
            for j in 0..m {
                let phi2 = j as f64 * h;
                let zs = [
                    Complex64::from_polar(r1, phi1),
                    Complex64::from_polar(r2, phi2),
                ];
                let v = joint_log_density(EnsembleKind::InducedGinibre, &p, &zs).unwrap();
                acc += v.to_f64();
            }
        }
        let oracle = acc * h * h * r1 * r2;
        let direct = radial_joint_density(EnsembleKind::InducedGinibre, &p, &[r1, r2]).unwrap();
        // direct = (2π)² e^{-2} · Per[[1,1],[1,1]] · r1 r2 = (2π)²·2·e^{-2}
        let explicit = (2.0 * PI).powi(2) * 2.0 * (-2.0f64).exp();
        assert!((direct - explicit).abs() < 1e-12 * explicit);
        assert!(
            (oracle - direct).abs() < 1e-8 * direct,
            "angular oracle {oracle} vs direct {direct}"
        );
    }

    #[test]
    fn radial_budget_cap() {
        let p = EnsembleParams::single_fte(7, 0.0, 1.0);
        let radii = vec![0.1; 7];
        assert!(radial_joint_density(EnsembleKind::GinibreFte, &p, &radii).is_err());
    }

    #[test]
    fn dimension_errors() {
        let p = EnsembleParams::single_fte(3, 0.0, 1.0);
        let zs = [Complex64::new(0.1, 0.0)];
        assert!(joint_log_density(EnsembleKind::GinibreFte, &p, &zs).is_err());
        assert!(radial_joint_density(EnsembleKind::GinibreFte, &p, &[0.1, 0.2]).is_err());
    }
}
