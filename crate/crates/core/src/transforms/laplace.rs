use crate::{Error, Result};

// 15-point Gauss–Kronrod-ish panel: plain 16-point Gauss–Legendre reused
// from the Kummer quadrature; adaptive bisection supplies the error control.
const GL_X: [f64; 8] = [
    0.0950125098376374,
    0.2816035507792589,
    0.4580167776572274,
    0.6178762444026438,
    0.7554044083550030,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL_W: [f64; 8] = [
    0.1894506104550685,
    0.1826034150449236,
    0.1691565193950025,
    0.1495959888165767,
    0.1246289712555339,
    0.0951585116824928,
    0.0622535239386479,
    0.0271524594117541,
];

fn gl16(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let c = 0.5 * (hi + lo);
    let d = 0.5 * (hi - lo);
    let mut s = 0.0;
    for i in 0..8 {
        s += GL_W[i] * (f(c - d * GL_X[i]) + f(c + d * GL_X[i]));
    }
    s * d
}

fn adaptive(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64, depth: usize, budget: &mut i64) -> Result<f64> {
    *budget -= 1;
    if *budget < 0 {
        return Err(Error::NonConvergence("forward_laplace panel budget exhausted".into()));
    }
    let whole = gl16(f, lo, hi);
    let mid = 0.5 * (lo + hi);
    let left = gl16(f, lo, mid);
    let right = gl16(f, mid, hi);
    let refined = left + right;
    if (refined - whole).abs() <= tol * refined.abs().max(1e-300) || depth == 0 {
        return Ok(refined);
    }
    Ok(adaptive(f, lo, mid, tol, depth - 1, budget)?
        + adaptive(f, mid, hi, tol, depth - 1, budget)?)
}

/// ∫_0^∞ e^{−ts} f(s) ds for t > 0.
///
/// `alpha` declares the endpoint behavior f(s) ~ s^alpha near 0 (alpha > −1);
/// for alpha in (−1, 4) the first panel is mapped by s = w^{1/(alpha+1)},
/// which removes the endpoint weight exactly. The remaining range is covered
/// by adaptive panels doubled until the exponential tail is negligible.
pub fn forward_laplace(f: &dyn Fn(f64) -> f64, t: f64, alpha: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("forward_laplace requires t > 0, got {t}")));
    }
    if !(alpha > -1.0) {
        return Err(Error::Domain(format!("forward_laplace requires alpha > -1, got {alpha}")));
    }
    let tol = 1e-9;
    let mut budget: i64 = 200_000;
    let d = 1.0 / t;
    let g = |s: f64| (-t * s).exp() * f(s);

    let mut total = if alpha != 0.0 && alpha < 4.0 {
        let beta = 1.0 / (alpha + 1.0);
        let sub = |w: f64| {
            if w <= 0.0 {
                return 0.0;
            }
            let s = w.powf(beta);
            g(s) * beta * w.powf(beta - 1.0)
        };
        adaptive(&sub, 0.0, d.powf(alpha + 1.0), tol, 28, &mut budget)?
    } else {
        adaptive(&g, 0.0, d, tol, 28, &mut budget)?
    };

    // doubling panels out along the exponential tail
    let mut lo = d;
    let mut width = d;
    let mut quiet = 0;
    for _ in 0..200 {
        let hi = lo + width;
        let c = adaptive(&g, lo, hi, tol, 24, &mut budget)?;
        total += c;
        if c.abs() <= 1e-10 * total.abs().max(1e-300) {
            quiet += 1;
            if quiet >= 2 {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= 1.7;
    }
    Err(Error::NonConvergence("forward_laplace tail did not settle".into()))
}
