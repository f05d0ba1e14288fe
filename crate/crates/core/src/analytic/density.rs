use std::f64::consts::PI;

use num_complex::Complex64;

use super::params::{EnsembleKind, EnsembleParams};
use crate::specfun::{
    kummer_u_ln, log_binomial, log_gamma, log_gamma_ratio, log_sum_exp, LogReal, LogSumAcc,
};
use crate::transforms::{meijer_g, meijer_g_contour_log, ContourConfig, MeijerSpec};
use crate::{Error, Result};

// x^p in log form with the 0^0 = 1 convention.
fn ln_pow(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        p * x.ln()
    }
}

/// Spectral density R^{(1)}(z), normalized so its plane integral is N.
///
/// Fixed-trace kinds vanish identically for |z|² ≥ s; the log-space term
/// sums keep N = 50 (trace exponent ~2500) well conditioned.
pub fn density(kind: EnsembleKind, p: &EnsembleParams, z: Complex64) -> Result<f64> {
    p.validate(kind)?;
    let r2 = z.norm_sqr();
    match kind {
        EnsembleKind::InducedGinibre => induced_density(p.n, p.nu[0], p.t[0], r2),
        EnsembleKind::GinibreFte | EnsembleKind::NormalFte => {
            fte_density_with_exponent(p.trace_exponent(kind), p.n, p.nu[0], p.s[0], r2)
        }
        EnsembleKind::ProductGinibre => product_density(p, r2),
        EnsembleKind::MixedProduct => mixed_density(p, r2),
    }
}

// Single parameterized fixed-trace density: the Ginibre and normal variants
// differ only in the trace exponent E (N²+Nν vs N(N+1)/2+Nν), so both kinds
// share this routine.
fn fte_density_with_exponent(e: f64, n: usize, nu: f64, s: f64, r2: f64) -> Result<f64> {
    if r2 >= s {
        return Ok(0.0);
    }
    if r2 == 0.0 && nu > 0.0 {
        return Ok(0.0);
    }
    if r2 == 0.0 && nu < 0.0 {
        return Ok(f64::INFINITY);
    }
    let d = s - r2;
    let mut acc = LogSumAcc::new();
    let l_max = if r2 == 0.0 { 0 } else { n - 1 };
    for l in 0..=l_max {
        let lf = l as f64;
        let ln_term = log_binomial(e - 2.0, lf + nu)?
            + ln_pow(r2, lf + nu)
            + (e - lf - nu - 2.0) * d.ln();
        acc.add(LogReal::from_ln(ln_term));
    }
    let total = acc.total();
    if total.is_zero() {
        return Ok(0.0);
    }
    let ln_pref = log_gamma_ratio(e, 1.0)? - PI.ln() - (e - 1.0) * s.ln();
    Ok((ln_pref + total.log_abs).exp())
}

fn induced_density(n: usize, nu: f64, t: f64, r2: f64) -> Result<f64> {
    if r2 == 0.0 && nu > 0.0 {
        return Ok(0.0);
    }
    if r2 == 0.0 && nu < 0.0 {
        return Ok(f64::INFINITY);
    }
    let mut acc = LogSumAcc::new();
    let l_max = if r2 == 0.0 { 0 } else { n - 1 };
    for l in 0..=l_max {
        let lf = l as f64;
        let ln_term = ln_pow(r2, lf + nu) - t * r2 + (lf + 1.0 + nu) * t.ln()
            - PI.ln()
            - log_gamma(lf + 1.0 + nu)?;
        acc.add(LogReal::from_ln(ln_term));
    }
    Ok(acc.total().to_f64())
}

fn product_density(p: &EnsembleParams, r2: f64) -> Result<f64> {
    let tau = p.tau();
    let x = tau * r2;
    let spec = MeijerSpec::new(vec![], p.nu.clone())?;
    let cfg = ContourConfig::default();
    let ln_g = if x == 0.0 {
        return origin_value_product(p, tau);
    } else {
        let v = meijer_g(&spec, x, &cfg)?;
        if v <= 0.0 {
            return Ok(0.0);
        }
        v.ln()
    };
    let mut acc = LogSumAcc::new();
    for k in 0..p.n {
        let kf = k as f64;
        let mut ln_term = (kf + 1.0) * tau.ln() + ln_pow(r2, kf) - PI.ln();
        for &nu in &p.nu {
            ln_term -= log_gamma(nu + kf + 1.0)?;
        }
        acc.add(LogReal::from_ln(ln_term));
    }
    Ok((ln_g + acc.total().log_abs).exp())
}

// limit x→0 of the product density: only the k=0 term can survive, through
// the leading residue of the Meijer integrand at u = min(ν).
fn origin_value_product(p: &EnsembleParams, tau: f64) -> Result<f64> {
    let nu_min = p.nu.iter().cloned().fold(f64::INFINITY, f64::min);
    if nu_min > 0.0 {
        return Ok(0.0);
    }
    if nu_min < 0.0 {
        return Ok(f64::INFINITY);
    }
    let zero_count = p.nu.iter().filter(|&&v| v == 0.0).count();
    if zero_count > 1 {
        // G ~ -C ln x: logarithmic divergence at the origin
        return Ok(f64::INFINITY);
    }
    let mut ln_g0 = 0.0;
    for &nu in &p.nu {
        if nu != 0.0 {
            ln_g0 += log_gamma(nu)?;
        }
    }
    let mut ln_term = tau.ln() - PI.ln() + ln_g0;
    for &nu in &p.nu {
        ln_term -= log_gamma(nu + 1.0)?;
    }
    Ok(ln_term.exp())
}

// Spectral density of the mixed product via the shifted Meijer form:
// all |z|², s_j, t_j magnitude lives inside one log-space contour integral
// per term, with parameter rows a_j = N²+Nν_j−1 (j ≤ m), b_j = ν_j+k.
fn mixed_density(p: &EnsembleParams, r2: f64) -> Result<f64> {
    let nf = p.n as f64;
    let tau = p.tau();
    let s_prod = p.s_prod();
    let x = tau * r2 / s_prod;
    let mut ln_pref = tau.ln() - s_prod.ln();
    for j in 0..p.fixed {
        ln_pref += log_gamma(nf * nf + nf * p.nu[j])?;
    }
    let a_top: Vec<f64> = (0..p.fixed).map(|j| nf * nf + nf * p.nu[j] - 1.0).collect();
    let cfg = ContourConfig::default();
    if x == 0.0 {
        return mixed_density_origin(p, ln_pref, &a_top);
    }
    let mut acc = LogSumAcc::new();
    for k in 0..p.n {
        let kf = k as f64;
        let b_bottom: Vec<f64> = p.nu.iter().map(|nu| nu + kf).collect();
        let spec = MeijerSpec::new(a_top.clone(), b_bottom)?;
        let g = meijer_g_contour_log(&spec, x, &cfg)?;
        if g.is_zero() {
            continue;
        }
        let mut ln_term = g.log_abs - PI.ln();
        for &nu in &p.nu {
            ln_term -= log_gamma(nu + kf + 1.0)?;
        }
        acc.add(LogReal::new(g.sign, ln_term));
    }
    let total = acc.total();
    if total.is_zero() || total.sign < 0 {
        return Ok(0.0);
    }
    Ok((ln_pref + total.log_abs).exp())
}

fn mixed_density_origin(p: &EnsembleParams, ln_pref: f64, a_top: &[f64]) -> Result<f64> {
    let nu_min = p.nu.iter().cloned().fold(f64::INFINITY, f64::min);
    if nu_min > 0.0 {
        return Ok(0.0);
    }
    if nu_min < 0.0 {
        return Ok(f64::INFINITY);
    }
    if p.nu.iter().filter(|&&v| v == 0.0).count() > 1 {
        return Ok(f64::INFINITY);
    }
    // k = 0 residue value: Π_{ν_j ≠ 0} Γ(ν_j) / Π_j Γ(a_j)
    let mut ln_g0 = 0.0;
    for &nu in &p.nu {
        if nu != 0.0 {
            ln_g0 += log_gamma(nu)?;
        }
        ln_g0 -= log_gamma(nu + 1.0)?;
    }
    for &a in a_top {
        ln_g0 -= log_gamma(a)?;
    }
    Ok((ln_pref + ln_g0 - PI.ln()).exp())
}

/// The M = 2, m = 1 mixed density through its Kummer-U representation:
/// an independent evaluation path used to cross-check the contour route.
pub fn density_mixed_kummer(p: &EnsembleParams, z: Complex64) -> Result<f64> {
    p.validate(EnsembleKind::MixedProduct)?;
    if p.factors != 2 || p.fixed != 1 {
        return Err(Error::Unsupported(
            "the Kummer-U form covers exactly M = 2, m = 1".into(),
        ));
    }
    let nf = p.n as f64;
    let (nu1, nu2) = (p.nu[0], p.nu[1]);
    let x = p.t[0] * z.norm_sqr() / p.s[0];
    if x == 0.0 {
        return mixed_density(p, 0.0);
    }
    let e1 = nf * nf + nf * nu1;
    let ln_pref = p.t[0].ln() - p.s[0].ln() + log_gamma(e1)? - x;
    let mut acc = LogSumAcc::new();
    for k in 0..p.n {
        let kf = k as f64;
        let a_u = nf * (nf + nu1) - nu1 - kf - 1.0;
        let ln_u = kummer_u_ln(a_u, 1.0 - nu1 + nu2, x)?;
        let ln_term = (kf + nu2) * x.ln() + ln_u
            - PI.ln()
            - log_gamma(kf + 1.0 + nu1)?
            - log_gamma(kf + 1.0 + nu2)?;
        acc.add(LogReal::from_ln(ln_term));
    }
    Ok((ln_pref + acc.total().log_abs).exp())
}

/// Alternative single-variable power-series form of the fixed-trace Ginibre
/// density, requiring integer ν ≥ 0; the equivalence with [`density`] is a
/// cross-check exercised by the verification battery.
pub fn density_fte_alt(p: &EnsembleParams, z: Complex64) -> Result<f64> {
    p.validate(EnsembleKind::GinibreFte)?;
    let nu = p.nu[0];
    if nu < 0.0 || nu.fract() != 0.0 {
        return Err(Error::Domain(format!(
            "the power-series form needs non-negative integer nu, got {nu}"
        )));
    }
    let n = p.n;
    let nf = n as f64;
    let s = p.s[0];
    let r2 = z.norm_sqr();
    if r2 >= s {
        return Ok(0.0);
    }
    let e = nf * nf + nf * nu;
    let u = r2 / s;
    let mut outer = LogSumAcc::new();
    for m in 0..n {
        let mf = m as f64;
        // c_m = Σ_{l=0}^m (-1)^{m-l} C(E-2, l+ν) C(N-l-1, m-l)
        let mut inner: Vec<LogReal> = Vec::with_capacity(m + 1);
        for l in 0..=m {
            let lf = l as f64;
            if mf - lf > nf - lf - 1.0 {
                continue; // C(N-l-1, m-l) vanishes
            }
            let ln_c = log_binomial(e - 2.0, lf + nu)? + log_binomial(nf - lf - 1.0, mf - lf)?;
            let sign = if (m - l) % 2 == 0 { 1 } else { -1 };
            inner.push(LogReal::new(sign, ln_c));
        }
        if inner.is_empty() {
            continue;
        }
        let c_m = log_sum_exp(&inner)?;
        if c_m.is_zero() {
            continue;
        }
        if u == 0.0 && mf + nu > 0.0 {
            continue;
        }
        outer.add(LogReal::new(c_m.sign, c_m.log_abs + ln_pow(u, mf + nu)));
    }
    let series = outer.total();
    if series.is_zero() || series.sign < 0 {
        return Ok(0.0);
    }
    let ln_pref =
        log_gamma_ratio(e, 1.0)? - PI.ln() - s.ln() + (e - nf - nu - 1.0) * (1.0 - u).ln();
    Ok((ln_pref + series.log_abs).exp())
}

/// Limiting global density profiles, normalized to plane integral 1:
/// the circular law 1/π and the M-factor product profile
/// |z|^{2/M−2} / (Mπ), both supported on the unit disc.
pub fn limiting_density(product_factors: usize, z: Complex64) -> Result<f64> {
    if product_factors == 0 {
        return Err(Error::Config("limiting density needs M >= 1".into()));
    }
    let r = z.norm();
    if r >= 1.0 {
        return Ok(0.0);
    }
    if product_factors == 1 {
        return Ok(1.0 / PI);
    }
    if r == 0.0 {
        return Err(Error::Domain(
            "the M >= 2 limiting profile is singular at z = 0".into(),
        ));
    }
    let mf = product_factors as f64;
    Ok(r.powf(2.0 / mf - 2.0) / (mf * PI))
}

/// ∫_C density d²z by adaptive radial Simpson quadrature (the integrand is
/// rotation invariant). `rmax` of `None` selects a kind-appropriate cutoff.
pub fn plane_integral(kind: EnsembleKind, p: &EnsembleParams, rmax: Option<f64>) -> Result<f64> {
    p.validate(kind)?;
    let rmax = rmax.unwrap_or(match kind {
        EnsembleKind::GinibreFte | EnsembleKind::NormalFte => p.s[0].sqrt(),
        EnsembleKind::InducedGinibre => {
            (((p.n as f64 + p.nu[0]) / p.t[0]).sqrt() * 2.0 + 6.0 / p.t[0].sqrt()).max(3.0)
        }
        EnsembleKind::ProductGinibre | EnsembleKind::MixedProduct => {
            let scale = p.s_prod() / p.tau();
            let mf = p.factors as f64;
            2.5 * (scale * (p.n as f64 + 1.0).powf(mf)).powf(0.5) + 4.0
        }
    });
    let f = |r: f64| -> Result<f64> {
        Ok(2.0 * PI * r * density(kind, p, Complex64::new(r, 0.0))?)
    };
    // Near the origin the integrand can carry r^{1+2ν} or r ln r behavior
    // (products with several ν_j = 0 diverge logarithmically), so that part
    // is integrated on a log-radius grid where it is smooth.
    let r_split = 0.02 * rmax;
    let origin_part = |h: f64| -> Result<f64> {
        let v_hi = r_split.ln();
        let v_lo = v_hi - 14.0; // r² weight leaves < e^{-28} below this

        let mut n = ((v_hi - v_lo) / h).ceil() as usize;
        if n % 2 == 1 {
            n += 1;
        }
        let mut acc = 0.0;
        for i in 0..=n {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let v = v_lo + (v_hi - v_lo) * i as f64 / n as f64;
            let r = v.exp();
            acc += w * r * f(r)?;
        }
        Ok(acc * (v_hi - v_lo) / (3.0 * n as f64))
    };
    let simpson = |nodes: usize| -> Result<f64> {
        let h = (rmax - r_split) / nodes as f64;
        let mut acc = 0.0;
        for i in 0..=nodes {
            let w = if i == 0 || i == nodes {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += w * f(r_split + i as f64 * h)?;
        }
        Ok(acc * h / 3.0)
    };
    // tolerance anchored to the full integral scale N: the head panel is a
    // small fraction of the mass and must not chase relative digits beyond
    // what the 1e-6 normalization contract uses
    let tol_abs = 1e-8 * p.n as f64;
    let refine = |eval: &dyn Fn(usize) -> Result<f64>, start: usize| -> Result<f64> {
        let mut n = start;
        let mut prev = eval(n)?;
        for _ in 0..4 {
            n *= 2;
            let cur = eval(n)?;
            if (cur - prev).abs() <= 1e-8f64.mul_add(cur.abs(), tol_abs) {
                return Ok(cur);
            }
            prev = cur;
        }
        Ok(prev)
    };
    let head = refine(&|n| origin_part(14.0 / n as f64), 96)?;
    let tail = refine(&|n| simpson(n), 512)?;
    Ok(head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fte_origin_value() {
        // density at z = 0, s = 1, ν = 0 is (N²−1)/π
        for n in [2usize, 5, 10, 50] {
            let p = EnsembleParams::single_fte(n, 0.0, 1.0);
            let got = density(EnsembleKind::GinibreFte, &p, Complex64::new(0.0, 0.0)).unwrap();
            let expect = ((n * n - 1) as f64) / PI;
            assert!(
                (got - expect).abs() <= 1e-12 * expect,
                "N={n}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn fte_rescaled_origin_is_one_minus_inverse_nsq() {
        for n in [5usize, 10, 50] {
            let nf = n as f64;
            let p = EnsembleParams::single_fte(n, 0.0, 1.0);
            let got = density(EnsembleKind::GinibreFte, &p, Complex64::new(0.0, 0.0)).unwrap()
                / (nf * nf);
            let expect = (1.0 - 1.0 / (nf * nf)) / PI;
            assert!((got - expect).abs() <= 1e-12 * expect);
        }
    }

    #[test]
    fn fte_vanishes_at_support_edge() {
        let p = EnsembleParams::single_fte(4, 1.0, 2.0);
        let z = Complex64::new(2.0f64.sqrt(), 0.0);
        assert_eq!(density(EnsembleKind::GinibreFte, &p, z).unwrap(), 0.0);
        let z = Complex64::new(1.5, 0.0);
        assert_eq!(density(EnsembleKind::GinibreFte, &p, z).unwrap(), 0.0);
    }

    #[test]
    fn induced_matches_product_with_one_factor() {
        let pi_ = EnsembleParams::induced(4, 1.0, 1.3);
        let pp = EnsembleParams::product(4, vec![1.0], vec![1.3]);
        for r in [0.1, 0.6, 1.4, 2.2] {
            let a = density(EnsembleKind::InducedGinibre, &pi_, Complex64::new(r, 0.0)).unwrap();
            let b = density(EnsembleKind::ProductGinibre, &pp, Complex64::new(r, 0.0)).unwrap();
            assert!((a - b).abs() < 1e-11 * a.max(1e-30), "r={r}: {a} vs {b}");
        }
    }

    #[test]
    fn fte_alt_equivalence_small_grid() {
        for (n, nu) in [(2usize, 0.0), (2, 1.0), (2, 2.0), (5, 1.0), (5, 2.0)] {
            let p = EnsembleParams::single_fte(n, nu, 1.0);
            for i in 1..12 {
                let r = 0.08 * i as f64;
                let z = Complex64::new(r, 0.0);
                let a = density(EnsembleKind::GinibreFte, &p, z).unwrap();
                let b = density_fte_alt(&p, z).unwrap();
                assert!(
                    (a - b).abs() <= 1e-10 * a.abs().max(1e-300),
                    "N={n}, nu={nu}, r={r}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn fte_alt_normalizes_for_positive_nu() {
        // regression guard for the power-series form at ν > 0: its plane
        // integral must equal N, pinning the binomial split
        let p = EnsembleParams::single_fte(2, 1.0, 1.0);
        let f = |r: f64| 2.0 * PI * r * density_fte_alt(&p, Complex64::new(r, 0.0)).unwrap();
        let n = 4000;
        let h = 1.0 / n as f64;
        let mut acc = 0.0;
        for i in 0..=n {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += w * f(i as f64 * h);
        }
        acc *= h / 3.0;
        assert!((acc - 2.0).abs() < 1e-8, "integral {acc}");
    }

    #[test]
    fn fte_alt_rejects_non_integer_nu() {
        let p = EnsembleParams::single_fte(3, 0.5, 1.0);
        assert!(density_fte_alt(&p, Complex64::new(0.3, 0.0)).is_err());
    }

    #[test]
    fn binomial_coefficient_identity_nu_zero() {
        // Σ_l C(N²-2, l) C(-N+m, m-l) = C(N²-N-2+m, m); at N=3, m=2 both
        // sides give C(6,2) = 15 by direct summation
        let n = 3.0f64;
        let m = 2usize;
        let mut sum = 0.0;
        for l in 0..=m {
            let lf = l as f64;
            let c1 = log_binomial(n * n - 2.0, lf).unwrap().exp();
            let c2 = (-1.0f64).powi((m - l) as i32)
                * log_binomial(n - lf - 1.0, m as f64 - lf).unwrap().exp();
            sum += c1 * c2;
        }
        let rhs = log_binomial(n * n - n - 2.0 + m as f64, m as f64).unwrap().exp();
        assert!((rhs - 15.0).abs() < 1e-10, "{rhs}");
        assert!((sum - rhs).abs() < 1e-10, "{sum} vs {rhs}");
    }

    #[test]
    fn scaling_law_single_fte() {
        // s⁻¹ R(z/√s; s) = R(z; 1)
        let nu = 0.7;
        for n in [2usize, 6] {
            let p1 = EnsembleParams::single_fte(n, nu, 1.0);
            let ps = EnsembleParams::single_fte(n, nu, 3.7);
            for r in [0.15, 0.5, 0.9] {
                let lhs = density(
                    EnsembleKind::GinibreFte,
                    &ps,
                    Complex64::new(r * 3.7f64.sqrt(), 0.0),
                )
                .unwrap()
                    * 3.7;
                let rhs =
                    density(EnsembleKind::GinibreFte, &p1, Complex64::new(r, 0.0)).unwrap();
                assert!((lhs - rhs).abs() < 1e-12 * rhs.max(1e-30));
            }
        }
    }

    #[test]
    fn normal_fte_is_exponent_substitution() {
        // the normal-kind density equals the shared routine at the
        // substituted exponent: assert through the public surface by
        // comparing against a Ginibre-kind call with matching E
        let n = 4usize;
        let nf = n as f64;
        let nu = 1.0;
        let p = EnsembleParams::single_fte(n, nu, 1.0);
        let e_normal = 0.5 * nf * (nf + 1.0) + nf * nu;
        for r in [0.2, 0.5, 0.8] {
            let direct = density(EnsembleKind::NormalFte, &p, Complex64::new(r, 0.0)).unwrap();
            let shared = fte_density_with_exponent(e_normal, n, nu, 1.0, r * r).unwrap();
            assert_eq!(direct, shared);
        }
    }

    #[test]
    fn mixed_reduces_to_single_fte() {
        // M = 1, m = 1 mixed product is the fixed-trace ensemble itself
        let pm = EnsembleParams::mixed(3, vec![1.0], vec![1.0], vec![]);
        let pf = EnsembleParams::single_fte(3, 1.0, 1.0);
        for r in [0.15, 0.45, 0.75, 0.95] {
            let a = density(EnsembleKind::MixedProduct, &pm, Complex64::new(r, 0.0)).unwrap();
            let b = density(EnsembleKind::GinibreFte, &pf, Complex64::new(r, 0.0)).unwrap();
            assert!(
                (a - b).abs() <= 1e-10 * b.abs().max(1e-300),
                "r={r}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn mixed_reduces_to_product_at_m_zero() {
        // m = 0 through the shifted-contour route equals the product formula
        let pm = EnsembleParams::product(3, vec![0.0, 1.0], vec![1.0, 1.5]);
        for r in [0.3, 0.9, 1.5] {
            let z = Complex64::new(r, 0.0);
            let a = density(EnsembleKind::MixedProduct, &pm, z).unwrap();
            let b = density(EnsembleKind::ProductGinibre, &pm, z).unwrap();
            assert!(
                (a - b).abs() <= 1e-10 * b.abs().max(1e-300),
                "r={r}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn mixed_matches_kummer_route() {
        let pm = EnsembleParams::mixed(3, vec![0.0, 0.0], vec![1.0], vec![1.0]);
        for r in [0.4, 1.0, 1.7] {
            let z = Complex64::new(r / 2.0f64.sqrt(), r / 2.0f64.sqrt());
            let a = density(EnsembleKind::MixedProduct, &pm, z).unwrap();
            let b = density_mixed_kummer(&pm, z).unwrap();
            assert!(
                (a - b).abs() <= 1e-8 * b.abs().max(1e-300),
                "r={r}: contour {a} vs kummer {b}"
            );
        }
    }

    #[test]
    fn limiting_profiles() {
        let z = Complex64::new(0.5, 0.0);
        assert!((limiting_density(1, z).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!((limiting_density(2, z).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert_eq!(limiting_density(1, Complex64::new(1.2, 0.0)).unwrap(), 0.0);
        assert_eq!(limiting_density(3, Complex64::new(0.0, 1.7)).unwrap(), 0.0);
        assert!(limiting_density(2, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn normalization_small_cases() {
        let cases: Vec<(EnsembleKind, EnsembleParams)> = vec![
            (EnsembleKind::GinibreFte, EnsembleParams::single_fte(3, 0.5, 1.0)),
            (EnsembleKind::NormalFte, EnsembleParams::single_fte(3, 1.0, 2.0)),
            (EnsembleKind::InducedGinibre, EnsembleParams::induced(4, 1.0, 2.0)),
            (EnsembleKind::ProductGinibre, EnsembleParams::product(3, vec![0.0, 1.0], vec![1.0, 1.0])),
        ];
        for (kind, p) in cases {
            let integral = plane_integral(kind, &p, None).unwrap();
            let n = p.n as f64;
            assert!(
                (integral - n).abs() < 1e-6 * n,
                "{kind:?}: integral {integral} vs N={n}"
            );
        }
    }
}
