use crate::{Error, Result};

/// Modified Bessel function of the second kind K_ν(x) for real order and x > 0.
///
/// Evaluated from K_ν(x) = ∫_0^∞ e^{−x cosh t} cosh(νt) dt by trapezoidal
/// quadrature in log space; the integrand decays doubly exponentially, so
/// step halving converges geometrically. Even in the order by construction.
pub fn bessel_k(order: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("bessel_k requires x > 0, got {x}")));
    }
    let nu = order.abs();

    // log integrand g(t) = -x cosh t + ln cosh(νt)
    let g = |t: f64| -> f64 {
        let c = -x * t.cosh();
        if nu == 0.0 {
            c
        } else {
            let a = (nu * t).abs();
            c + a + (1.0 + (-2.0 * a).exp()).ln() - std::f64::consts::LN_2
        }
    };

    // upper cutoff: walk out until 60 nats below the running peak
    let mut peak = g(0.0);
    let mut t_hi = 1.0;
    loop {
        let v = g(t_hi);
        if v > peak {
            peak = v;
        }
        if v < peak - 60.0 || t_hi > 700.0 {
            break;
        }
        t_hi += 1.0;
    }
    if t_hi > 700.0 {
        return Err(Error::NonConvergence("bessel_k integrand cutoff not found".into()));
    }

    let integrate = |h: f64| -> f64 {
        // trapezoid on [0, t_hi]; endpoint t=0 gets half weight
        let n = (t_hi / h).ceil() as usize;
        let mut sum = 0.5 * (g(0.0) - peak).exp();
        for k in 1..=n {
            sum += (g(k as f64 * h) - peak).exp();
        }
        sum * h
    };

    let mut h = 0.25;
    let mut prev = integrate(h);
    for _ in 0..8 {
        h *= 0.5;
        let cur = integrate(h);
        if (cur - prev).abs() <= 1e-12 * cur.abs() {
            return Ok(cur * peak.exp());
        }
        prev = cur;
    }
    Ok(prev * peak.exp())
}
