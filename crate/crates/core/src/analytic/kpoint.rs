use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::density::density;
use super::params::{CorrelatorQuery, EnsembleKind, EnsembleParams};
use crate::specfun::{log_gamma, LogReal};
use crate::transforms::{meijer_g, ContourConfig, MeijerSpec};
use crate::{Error, Result};

const FTE_K_CAP: usize = 4;
const FTE_N_CAP: usize = 30;

/// Kernel of orthonormalized polynomials of the induced Ginibre ensemble,
/// weight factors |zu|^ν exp(−t(|z|²+|u|²)/2) included. Summands are formed
/// in log space and accumulated in a scaled frame.
pub fn ginibre_kernel(z: Complex64, u: Complex64, t: f64, nu: f64, n: usize) -> Result<Complex64> {
    if !(t > 0.0) || !(nu > -1.0) || n == 0 {
        return Err(Error::Domain("ginibre_kernel requires t > 0, nu > -1, N >= 1".into()));
    }
    let zu = z * u.conj();
    let mag = zu.norm();
    let base = if mag == 0.0 && nu == 0.0 {
        0.0
    } else {
        nu * mag.ln() // |zu|^ν; −∞ for zu = 0 with ν > 0 kills every term
    };
    let expo = -0.5 * t * (z.norm_sqr() + u.norm_sqr());
    let phase = zu.arg();
    let mut max_ln = f64::NEG_INFINITY;
    let mut acc = Complex64::new(0.0, 0.0);
    let l_max = if mag == 0.0 { 0 } else { n - 1 };
    for l in 0..=l_max {
        let lf = l as f64;
        let ln_mag = base + expo + if l == 0 { 0.0 } else { lf * mag.ln() }
            + (lf + 1.0 + nu) * t.ln()
            - PI.ln()
            - log_gamma(lf + 1.0 + nu)?;
        if !ln_mag.is_finite() {
            continue;
        }
        let term = Complex64::from_polar(1.0, lf * phase);
        if ln_mag > max_ln {
            if max_ln.is_finite() {
                acc *= (max_ln - ln_mag).exp();
            }
            max_ln = ln_mag;
            acc += term;
        } else {
            acc += term * (ln_mag - max_ln).exp();
        }
    }
    if !max_ln.is_finite() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(acc * max_ln.exp())
}

/// Kernel for the product of M induced Ginibre factors with inverse
/// variances t_j; depends on them only through τ = Π t_j.
pub fn product_kernel(z: Complex64, u: Complex64, p: &EnsembleParams) -> Result<Complex64> {
    let tau = p.tau();
    let cfg = ContourConfig::default();
    let w_half = |v: Complex64| -> Result<f64> {
        let x = tau * v.norm_sqr();
        if x == 0.0 {
            // only meaningful combined with the polynomial sum; weight → G(0+)
            return Ok(f64::NAN);
        }
        let spec = MeijerSpec::new(vec![], p.nu.clone())?;
        let g = meijer_g(&spec, x, &cfg)?;
        Ok(if g > 0.0 { 0.5 * g.ln() } else { f64::NEG_INFINITY })
    };
    let lw_z = w_half(z)?;
    let lw_u = w_half(u)?;
    if lw_z.is_nan() || lw_u.is_nan() {
        return Err(Error::Domain(
            "product_kernel is evaluated away from the origin (weight singular there)".into(),
        ));
    }
    let zu = z * u.conj();
    let mag = zu.norm();
    let phase = zu.arg();
    let mut max_ln = f64::NEG_INFINITY;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..p.n {
        let kf = k as f64;
        let mut ln_mag = lw_z + lw_u + (kf + 1.0) * tau.ln() - PI.ln()
            + if k == 0 { 0.0 } else { kf * mag.ln() };
        for &nu in &p.nu {
            ln_mag -= log_gamma(nu + kf + 1.0)?;
        }
        if !ln_mag.is_finite() {
            continue;
        }
        let term = Complex64::from_polar(1.0, kf * phase);
        if ln_mag > max_ln {
            if max_ln.is_finite() {
                acc *= (max_ln - ln_mag).exp();
            }
            max_ln = ln_mag;
            acc += term;
        } else {
            acc += term * (ln_mag - max_ln).exp();
        }
    }
    if !max_ln.is_finite() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(acc * max_ln.exp())
}

// 1/Γ(x) as a signed log value, finite everywhere (zero at the poles).
fn inv_gamma(x: f64) -> Result<LogReal> {
    if x > 0.0 {
        return Ok(LogReal::from_ln(-log_gamma(x)?));
    }
    if x.fract() == 0.0 {
        return Ok(LogReal::ZERO);
    }
    // reflection: 1/Γ(x) = sin(πx) Γ(1−x) / π
    let s = (PI * x).sin();
    let ln = s.abs().ln() + log_gamma(1.0 - x)? - PI.ln();
    Ok(LogReal::new(if s > 0.0 { 1 } else { -1 }, ln))
}

/// k-point density correlation function R^{(k)}(z_1,…,z_k).
///
/// Determinantal kinds evaluate det[K(z_i, z_j*)]; fixed-trace kinds run the
/// coupled permutation/level sum in log space (k ≤ 4, N ≤ 30). Mixed
/// products with k ≥ 2 have no closed form and are rejected.
pub fn kpoint(kind: EnsembleKind, p: &EnsembleParams, q: &CorrelatorQuery) -> Result<f64> {
    p.validate(kind)?;
    q.validate(kind, p)?;
    let k = q.k();
    if k == 1 {
        return density(kind, p, q.points[0]);
    }
    match kind {
        EnsembleKind::InducedGinibre => {
            let mut m = DMatrix::<Complex64>::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    m[(i, j)] = ginibre_kernel(q.points[i], q.points[j], p.t[0], p.nu[0], p.n)?;
                }
            }
            Ok(m.lu().determinant().re)
        }
        EnsembleKind::ProductGinibre => {
            let mut m = DMatrix::<Complex64>::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    m[(i, j)] = product_kernel(q.points[i], q.points[j], p)?;
                }
            }
            Ok(m.lu().determinant().re)
        }
        EnsembleKind::GinibreFte | EnsembleKind::NormalFte => fte_kpoint(kind, p, q),
        EnsembleKind::MixedProduct => Err(Error::Unsupported(
            "k >= 2 correlators of mixed products have no closed form".into(),
        )),
    }
}

// Coupled sum over S_k × {0..N-1}^k. The inverse-Γ factor with argument
// E − Σl − k(ν+1) ties the level sums together, so the complex summands are
// accumulated in a rescaled frame keyed to the running max log magnitude.
fn fte_kpoint(kind: EnsembleKind, p: &EnsembleParams, q: &CorrelatorQuery) -> Result<f64> {
    let k = q.k();
    let n = p.n;
    if k > FTE_K_CAP || n > FTE_N_CAP {
        return Err(Error::Budget(format!(
            "fixed-trace correlators capped at k <= {FTE_K_CAP}, N <= {FTE_N_CAP} (k!·N^k terms)"
        )));
    }
    let nu = p.nu[0];
    let s = p.s[0];
    let e = p.trace_exponent(kind);
    let sum_r2: f64 = q.points.iter().map(|z| z.norm_sqr()).sum();
    if sum_r2 >= s {
        return Ok(0.0);
    }
    if q.points.iter().any(|z| z.norm_sqr() == 0.0) && nu != 0.0 {
        return Ok(if nu > 0.0 { 0.0 } else { f64::INFINITY });
    }
    let d = s - sum_r2;
    let ln_d = d.ln();

    // tables
    let mut ln_gam = vec![0.0f64; n];
    for (l, slot) in ln_gam.iter_mut().enumerate() {
        *slot = log_gamma(l as f64 + 1.0 + nu)?;
    }
    let l_total_max = k * (n - 1);
    let mut coupling = Vec::with_capacity(l_total_max + 1);
    for l_sum in 0..=l_total_max {
        coupling.push(inv_gamma(e - l_sum as f64 - k as f64 * (nu + 1.0))?);
    }
    // pair logs/args of z_i z̄_j
    let mut pair_ln = vec![0.0f64; k * k];
    let mut pair_arg = vec![0.0f64; k * k];
    for i in 0..k {
        for j in 0..k {
            let w = q.points[i] * q.points[j].conj();
            pair_ln[i * k + j] = w.norm().ln();
            pair_arg[i * k + j] = w.arg();
        }
    }

    let ln_pref = log_gamma(e)?
        + 2.0 * nu * q.points.iter().map(|z| z.norm().ln()).sum::<f64>()
        - (e - 1.0) * s.ln()
        + (e - 1.0) * ln_d
        - k as f64 * PI.ln();

    let mut max_ln = f64::NEG_INFINITY;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut add_term = |ln_mag: f64, phase: f64, sign: f64| {
        if !ln_mag.is_finite() {
            return;
        }
        let term = Complex64::from_polar(sign, phase);
        if ln_mag > max_ln {
            if max_ln.is_finite() {
                acc *= (max_ln - ln_mag).exp();
            }
            max_ln = ln_mag;
            acc += term;
        } else {
            acc += term * (ln_mag - max_ln).exp();
        }
    };

    // permutations of 0..k with parity, via Heap's algorithm
    let mut perm: Vec<usize> = (0..k).collect();
    let mut counters = vec![0usize; k];
    let mut parity = 1.0f64;
    let mut levels = vec![0usize; k];
    let mut run_levels = |perm: &[usize], parity: f64, levels: &mut [usize]| {
        levels.iter_mut().for_each(|l| *l = 0);
        loop {
            let mut ln_mag = 0.0;
            let mut phase = 0.0;
            let mut l_sum = 0usize;
            for (j, &lj) in levels.iter().enumerate() {
                let lf = lj as f64;
                let idx = j * k + perm[j];
                if lj > 0 {
                    ln_mag += lf * pair_ln[idx];
                    phase += lf * pair_arg[idx];
                }
                ln_mag -= ln_gam[lj] + (lf + 1.0 + nu) * ln_d;
                l_sum += lj;
            }
            let coup = coupling[l_sum];
            if coup.sign != 0 {
                add_term(ln_mag + coup.log_abs, phase, parity * f64::from(coup.sign));
            }
            // odometer increment
            let mut pos = 0;
            loop {
                if pos == levels.len() {
                    return;
                }
                levels[pos] += 1;
                if levels[pos] < n {
                    break;
                }
                levels[pos] = 0;
                pos += 1;
            }
        }
    };

    run_levels(&perm, parity, &mut levels);
    let mut i = 0;
    while i < k {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            parity = -parity;
            run_levels(&perm, parity, &mut levels);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }

    if !max_ln.is_finite() {
        return Ok(0.0);
    }
    let val = acc.re * (ln_pref + max_ln).exp();
    Ok(val.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_at_origin() {
        let k = ginibre_kernel(
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            1.0,
            0.0,
            5,
        )
        .unwrap();
        assert!((k.re - 1.0 / PI).abs() < 1e-14 && k.im.abs() < 1e-15);
    }

    #[test]
    fn kernel_hermitian() {
        let z = Complex64::new(0.4, -0.2);
        let u = Complex64::new(-0.1, 0.7);
        let a = ginibre_kernel(z, u, 1.3, 0.5, 6).unwrap();
        let b = ginibre_kernel(u, z, 1.3, 0.5, 6).unwrap();
        assert!((a - b.conj()).norm() < 1e-13 * a.norm());
    }

    #[test]
    fn kernel_n1_closed_form() {
        let z = Complex64::new(0.3, 0.1);
        let u = Complex64::new(-0.2, 0.5);
        let k = ginibre_kernel(z, u, 2.0, 0.0, 1).unwrap();
        let expect = 2.0 / PI * (-(z.norm_sqr() + u.norm_sqr())).exp();
        assert!((k - Complex64::new(expect, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn k1_matches_density_everywhere() {
        let z = Complex64::new(0.35, -0.15);
        let q = CorrelatorQuery::new(vec![z]);
        let cases: Vec<(EnsembleKind, EnsembleParams)> = vec![
            (EnsembleKind::InducedGinibre, EnsembleParams::induced(5, 0.5, 1.2)),
            (EnsembleKind::GinibreFte, EnsembleParams::single_fte(5, 0.5, 1.0)),
            (EnsembleKind::NormalFte, EnsembleParams::single_fte(5, 1.0, 1.0)),
            (EnsembleKind::ProductGinibre, EnsembleParams::product(4, vec![0.0, 1.0], vec![1.0, 1.0])),
        ];
        for (kind, p) in cases {
            let a = kpoint(kind, &p, &q).unwrap();
            let b = density(kind, &p, z).unwrap();
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-300), "{kind:?}");
        }
    }

    #[test]
    fn determinantal_identity_induced_k2() {
        let p = EnsembleParams::induced(6, 1.0, 1.0);
        let z1 = Complex64::new(0.5, 0.2);
        let z2 = Complex64::new(-0.3, 0.4);
        let q = CorrelatorQuery::new(vec![z1, z2]);
        let r2 = kpoint(EnsembleKind::InducedGinibre, &p, &q).unwrap();
        let k11 = ginibre_kernel(z1, z1, 1.0, 1.0, 6).unwrap();
        let k22 = ginibre_kernel(z2, z2, 1.0, 1.0, 6).unwrap();
        let k12 = ginibre_kernel(z1, z2, 1.0, 1.0, 6).unwrap();
        let expect = (k11 * k22).re - k12.norm_sqr();
        assert!((r2 - expect).abs() < 1e-12 * expect.abs());
    }

    #[test]
    fn fte_k2_theta_constraint() {
        let p = EnsembleParams::single_fte(4, 0.0, 1.0);
        let q = CorrelatorQuery::new(vec![Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.7)]);
        assert_eq!(kpoint(EnsembleKind::GinibreFte, &p, &q).unwrap(), 0.0);
    }

    #[test]
    fn fte_k2_positive_inside_support() {
        let p = EnsembleParams::single_fte(4, 0.0, 1.0);
        let q = CorrelatorQuery::new(vec![Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.2)]);
        let v = kpoint(EnsembleKind::GinibreFte, &p, &q).unwrap();
        assert!(v > 0.0 && v.is_finite());
    }

    #[test]
    fn caps_and_unsupported() {
        let p = EnsembleParams::single_fte(4, 0.0, 1.0);
        let pts: Vec<Complex64> = (0..4).map(|i| Complex64::new(0.05 * i as f64, 0.0)).collect();
        // k = N = 4 is allowed and finite
        let v = kpoint(EnsembleKind::GinibreFte, &p, &CorrelatorQuery::new(pts)).unwrap();
        assert!(v.is_finite());
        // mixed products reject k >= 2
        let pm = EnsembleParams::mixed(3, vec![0.0, 0.0], vec![1.0], vec![1.0]);
        let q2 =
            CorrelatorQuery::new(vec![Complex64::new(0.1, 0.0), Complex64::new(0.2, 0.0)]);
        assert!(kpoint(EnsembleKind::MixedProduct, &pm, &q2).is_err());
        // normal FTE needs k <= N-1
        let q4 = CorrelatorQuery::new(vec![
            Complex64::new(0.1, 0.0),
            Complex64::new(0.2, 0.0),
            Complex64::new(0.15, 0.1),
            Complex64::new(0.05, 0.1),
        ]);
        assert!(kpoint(EnsembleKind::NormalFte, &p, &q4).is_err());
    }

    #[test]
    fn scaling_law_k2() {
        // s^{-k} R(z/√s; s) = R(z; 1)
        let p1 = EnsembleParams::single_fte(5, 1.0, 1.0);
        let ps = EnsembleParams::single_fte(5, 1.0, 2.5);
        let zs = [Complex64::new(0.25, 0.1), Complex64::new(-0.2, 0.3)];
        let scaled: Vec<Complex64> = zs.iter().map(|z| z * 2.5f64.sqrt()).collect();
        let lhs = kpoint(EnsembleKind::GinibreFte, &ps, &CorrelatorQuery::new(scaled)).unwrap()
            * 2.5f64.powi(2);
        let rhs =
            kpoint(EnsembleKind::GinibreFte, &p1, &CorrelatorQuery::new(zs.to_vec())).unwrap();
        assert!((lhs - rhs).abs() < 1e-11 * rhs.abs(), "{lhs} vs {rhs}");
    }
}
