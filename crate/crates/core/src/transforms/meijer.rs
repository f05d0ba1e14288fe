use num_complex::Complex64;

use crate::specfun::{bessel_k, kummer_u, log_gamma, log_gamma_complex, LogReal};
use crate::{Error, Result};

/// Parameter block for G^{q,0}_{p,q}(a_top; b_bottom | x), the only Meijer
/// shape needed here: all bottom-row gammas sit in the numerator of the
/// Mellin–Barnes integrand and the top row in the denominator.
#[derive(Clone, Debug)]
pub struct MeijerSpec {
    pub a_top: Vec<f64>,
    pub b_bottom: Vec<f64>,
    pub m_index: usize,
    pub n_index: usize,
}

impl MeijerSpec {
    pub fn new(a_top: Vec<f64>, b_bottom: Vec<f64>) -> Result<Self> {
        if b_bottom.is_empty() {
            return Err(Error::Domain("MeijerSpec requires a non-empty bottom row".into()));
        }
        if a_top.len() > b_bottom.len() {
            return Err(Error::Domain(format!(
                "unsupported Meijer shape: p = {} > q = {}",
                a_top.len(),
                b_bottom.len()
            )));
        }
        let m_index = b_bottom.len();
        Ok(MeijerSpec { a_top, b_bottom, m_index, n_index: 0 })
    }

    pub fn p(&self) -> usize {
        self.a_top.len()
    }

    pub fn q(&self) -> usize {
        self.b_bottom.len()
    }

    fn min_b(&self) -> f64 {
        self.b_bottom.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// All parameters shifted by k (the x^k multiplication property).
    pub fn shifted(&self, k: f64) -> Self {
        MeijerSpec {
            a_top: self.a_top.iter().map(|a| a + k).collect(),
            b_bottom: self.b_bottom.iter().map(|b| b + k).collect(),
            m_index: self.m_index,
            n_index: self.n_index,
        }
    }
}

/// Contour / node-budget parameters shared by the Mellin–Barnes quadrature
/// and the Talbot inversion.
#[derive(Clone, Copy, Debug)]
pub struct ContourConfig {
    /// Re u of the vertical line; NaN selects min(b) − 1/2 automatically.
    /// For the Talbot contour this is the scale override (NaN = automatic).
    pub abscissa: f64,
    /// Initial quadrature node spacing (halved until converged).
    pub step: f64,
    /// Half-length of the contour line; for Talbot, the node count.
    pub truncation: f64,
    /// Relative tolerance target.
    pub target_tol: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        ContourConfig { abscissa: f64::NAN, step: 0.05, truncation: 4000.0, target_tol: 1e-9 }
    }
}

impl ContourConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.truncation > 0.0 && self.step < self.truncation) {
            return Err(Error::Config("ContourConfig requires 0 < step < truncation".into()));
        }
        if !(self.target_tol > 0.0 && self.target_tol <= 1e-4) {
            return Err(Error::Config("ContourConfig requires target_tol in (0, 1e-4]".into()));
        }
        Ok(())
    }
}

// ln integrand on the vertical line: u ln x + Σ lnΓ(b_i − u) − Σ lnΓ(a_j − u)
fn ln_integrand(spec: &MeijerSpec, ln_x: f64, u: Complex64) -> Result<Complex64> {
    let mut acc = u * ln_x;
    for &b in &spec.b_bottom {
        acc += log_gamma_complex(Complex64::new(b, 0.0) - u)?;
    }
    for &a in &spec.a_top {
        acc -= log_gamma_complex(Complex64::new(a, 0.0) - u)?;
    }
    Ok(acc)
}

struct ContourSum {
    log_peak: f64,
    scaled: f64,
    abs_scaled: f64,
    trunc_ratio: f64,
}

// Trapezoid along Re u = c using conjugate symmetry; returns the scaled sum
// S with G = S · exp(log_peak) · step / π.
fn contour_pass(spec: &MeijerSpec, ln_x: f64, c: f64, step: f64, cfg: &ContourConfig) -> Result<ContourSum> {
    let ln_tol = cfg.target_tol.ln() - 9.2; // two extra digits of slack
    let mut logs: Vec<(f64, f64)> = Vec::with_capacity(1024); // (Re ln f, Im ln f)
    let g0 = ln_integrand(spec, ln_x, Complex64::new(c, 0.0))?;
    let mut peak = g0.re;
    logs.push((g0.re, g0.im));
    let mut k = 1usize;
    let mut last_re = g0.re;
    let min_y = 8.0 * step;
    loop {
        let y = k as f64 * step;
        if y > cfg.truncation {
            return Err(Error::NonConvergence(format!(
                "meijer_g contour not decayed at truncation {} (integrand {:.1} nats above cutoff)",
                cfg.truncation,
                last_re - (peak + ln_tol)
            )));
        }
        let g = ln_integrand(spec, ln_x, Complex64::new(c, y))?;
        logs.push((g.re, g.im));
        if g.re > peak {
            peak = g.re;
        }
        last_re = g.re;
        if g.re < peak + ln_tol && y > min_y {
            break;
        }
        k += 1;
    }
    // Σ with the y=0 node at half weight, doubled real part elsewhere
    let mut sum = 0.5 * (logs[0].0 - peak).exp() * logs[0].1.cos();
    let mut abs_sum = sum.abs();
    for &(re, im) in &logs[1..] {
        let v = (re - peak).exp();
        sum += v * im.cos();
        abs_sum += v;
    }
    let trunc_ratio = (last_re - peak).exp();
    Ok(ContourSum { log_peak: peak, scaled: sum, abs_scaled: abs_sum, trunc_ratio })
}

// Steepest-descent abscissa: the real saddle of u ln x + Σ lnΓ(b−u) − Σ lnΓ(a−u)
// solves Σ ψ(b_i−c) − Σ ψ(a_j−c) = ln x, which minimizes the cancellation of
// the oscillatory trapezoid sum. Falls back to min(b) − 1/2 when no root
// lies in the search bracket.
fn saddle_abscissa(spec: &MeijerSpec, ln_x: f64) -> f64 {
    let upper_cap = spec
        .a_top
        .iter()
        .chain(spec.b_bottom.iter())
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let f = |c: f64| -> f64 {
        let mut acc = -ln_x;
        for &b in &spec.b_bottom {
            acc += digamma_raw(b - c);
        }
        for &a in &spec.a_top {
            acc -= digamma_raw(a - c);
        }
        acc
    };
    let mut hi = upper_cap - 1e-3;
    let f_hi = f(hi);
    if f_hi.is_nan() {
        return spec.min_b() - 0.5;
    }
    if f_hi > 0.0 {
        // ψ(b−c) still above ln x right next to the pole: stay close to it
        return upper_cap - 1e-3;
    }
    // extend the bracket until the saddle is enclosed; for large arguments
    // the root sits near -x^{1/(q-p)}
    let mut lo = upper_cap - 40.0;
    let mut f_lo = f(lo);
    while f_lo < 0.0 && upper_cap - lo < 3e7 {
        lo = upper_cap - (upper_cap - lo) * 4.0;
        f_lo = f(lo);
        if f_lo.is_nan() {
            return spec.min_b() - 0.5;
        }
    }
    if f_lo < 0.0 {
        return lo;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

// Gaussian half-width of the integrand magnitude at the saddle, from the
// second derivative Σ ψ'(b−c) − Σ ψ'(a−c) of its log.
fn saddle_width(spec: &MeijerSpec, c: f64) -> Option<f64> {
    let mut f2 = 0.0;
    for &b in &spec.b_bottom {
        f2 += trigamma_raw(b - c);
    }
    for &a in &spec.a_top {
        f2 -= trigamma_raw(a - c);
    }
    if f2.is_finite() && f2 > 0.0 {
        Some(1.0 / f2.sqrt())
    } else {
        None
    }
}

fn trigamma_raw(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NAN;
    }
    let mut result = 0.0;
    let mut w = x;
    while w < 10.0 {
        result += 1.0 / (w * w);
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    result + inv * (1.0 + 0.5 * inv + inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 / 42.0)))
}

// digamma without the Result plumbing; positive arguments only.
fn digamma_raw(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NAN;
    }
    let mut result = 0.0;
    let mut w = x;
    while w < 10.0 {
        result -= 1.0 / w;
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    result + w.ln() - 0.5 * inv - series
}

/// Mellin–Barnes contour evaluation of G^{q,0}_{p,q}(a; b | x) in log form.
///
/// Vertical line at Re u = min(b) − 1/2 (all Γ(b_i − u) poles to its right;
/// the a-row contributes no poles for this shape), trapezoidal quadrature
/// with automatic step refinement until two passes agree to `target_tol`.
/// Coincident b-parameters need no special casing on this contour.
pub fn meijer_g_contour_log(spec: &MeijerSpec, x: f64, cfg: &ContourConfig) -> Result<LogReal> {
    cfg.validate()?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("meijer_g requires x > 0, got {x}")));
    }
    if spec.p() == spec.q() {
        if x >= 1.0 {
            // G^{q,0}_{q,q} is supported on (0,1)
            return Ok(LogReal::ZERO);
        }
        if spec.p() == 1 {
            // single simple-pole tower: residue series sums to the beta form
            // x^b (1-x)^{a-b-1} / Γ(a-b)
            let (a, b) = (spec.a_top[0], spec.b_bottom[0]);
            if a - b <= 0.0 {
                return Err(Error::Domain(format!(
                    "meijer_g (1,1) shape requires a > b, got a={a}, b={b}"
                )));
            }
            let ln = b * x.ln() + (a - b - 1.0) * (1.0 - x).ln() - log_gamma(a - b)?;
            return Ok(LogReal::from_ln(ln));
        }
    }
    let ln_x = x.ln();
    let c = if cfg.abscissa.is_nan() { saddle_abscissa(spec, ln_x) } else { cfg.abscissa };
    // node spacing: resolve the saddle width and the residual |ln x|
    // oscillation, and stay inside the analyticity strip set by the nearest
    // Γ(b−u) pole
    let pole_gap = spec.min_b() - c;
    let mut step = cfg
        .step
        .min(0.7 / (1.0 + ln_x.abs()))
        .min((0.45 * pole_gap).max(1e-3));
    if cfg.abscissa.is_nan() {
        // at the saddle the phase is locally stationary, so the width sets
        // the only scale; start two halvings above the target resolution
        if let Some(width) = saddle_width(spec, c) {
            step = (width * 0.5).min(0.45 * pole_gap).max(step.min(1e-3)).min(4.0);
        }
    }
    let mut prev = contour_pass(spec, ln_x, c, step, cfg)?;
    for _ in 0..8 {
        step *= 0.5;
        let cur = contour_pass(spec, ln_x, c, step, cfg)?;
        let scale = (prev.log_peak - cur.log_peak).exp();
        let prev_val = prev.scaled * scale * 2.0; // same step units: prev used 2x step
        let diff = (cur.scaled - prev_val).abs();
        // severe-cancellation floor: once the signed sum sits at the f64
        // noise level of the term magnitudes, further refinement cannot
        // help; the value is then exact to ~1e-15 of the integrand scale,
        // which is the best any double-precision contour can deliver
        let floor = 1e-12 * cur.abs_scaled;
        if diff <= cfg.target_tol * cur.scaled.abs().max(1e-300)
            || (cur.scaled.abs() <= floor && prev_val.abs() <= 2.0 * floor)
        {
            let value = cur.scaled * step / std::f64::consts::PI;
            if value == 0.0 {
                return Ok(LogReal::ZERO);
            }
            return Ok(LogReal::new(
                if value > 0.0 { 1 } else { -1 },
                value.abs().ln() + cur.log_peak,
            ));
        }
        prev = cur;
    }
    Err(Error::NonConvergence("meijer_g step refinement did not converge".into()))
}

/// Contour value as a plain float (magnitudes permitting).
pub fn meijer_g_contour(spec: &MeijerSpec, x: f64, cfg: &ContourConfig) -> Result<f64> {
    Ok(meijer_g_contour_log(spec, x, cfg)?.to_f64())
}

/// Ratio of the integrand magnitude at the truncation point to its peak for
/// the contour quadrature; must come out below `target_tol`.
pub fn contour_truncation_ratio(spec: &MeijerSpec, x: f64, cfg: &ContourConfig) -> Result<f64> {
    cfg.validate()?;
    let ln_x = x.ln();
    let c = if cfg.abscissa.is_nan() { saddle_abscissa(spec, ln_x) } else { cfg.abscissa };
    let pole_gap = spec.min_b() - c;
    let step = cfg
        .step
        .min(0.7 / (1.0 + ln_x.abs()))
        .min((0.45 * pole_gap).max(1e-3));
    let pass = contour_pass(spec, ln_x, c, step, cfg)?;
    Ok(pass.trunc_ratio)
}

/// G^{q,0}_{p,q}(a; b | x), dispatching to closed forms where they exist:
/// q=1 → x^b e^{−x}; (1,1) → beta form; (0,2) → Bessel K; (1,2) → Kummer U.
/// Everything else goes through the contour quadrature.
pub fn meijer_g(spec: &MeijerSpec, x: f64, cfg: &ContourConfig) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("meijer_g requires x > 0, got {x}")));
    }
    match (spec.p(), spec.q()) {
        (0, 1) => {
            let b = spec.b_bottom[0];
            Ok((b * x.ln() - x).exp())
        }
        (1, 1) => meijer_g_contour_log(spec, x, cfg).map(LogReal::to_f64),
        (0, 2) => {
            let (b1, b2) = (spec.b_bottom[0], spec.b_bottom[1]);
            let k = bessel_k(b1 - b2, 2.0 * x.sqrt())?;
            Ok(2.0 * x.powf(0.5 * (b1 + b2)) * k)
        }
        (1, 2) => {
            // G^{2,0}_{1,2}(a; B, c | x) = x^c e^{-x} U(a−B, 1−B+c, x)
            let a = spec.a_top[0];
            let (hi, lo) = if spec.b_bottom[0] >= spec.b_bottom[1] {
                (spec.b_bottom[0], spec.b_bottom[1])
            } else {
                (spec.b_bottom[1], spec.b_bottom[0])
            };
            if a - hi > 0.0 {
                let u = kummer_u(a - hi, 1.0 - hi + lo, x)?;
                Ok((lo * x.ln() - x).exp() * u)
            } else {
                meijer_g_contour_log(spec, x, cfg).map(LogReal::to_f64)
            }
        }
        _ => meijer_g_contour_log(spec, x, cfg).map(LogReal::to_f64),
    }
}

/// Evaluate the parameter-shifted G; equals x^k · meijer_g(spec, x) by the
/// shift property, which the tests assert.
pub fn meijer_shift(spec: &MeijerSpec, k: f64, x: f64, cfg: &ContourConfig) -> Result<f64> {
    meijer_g(&spec.shifted(k), x, cfg)
}
