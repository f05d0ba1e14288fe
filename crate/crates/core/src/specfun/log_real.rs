use crate::{Error, Result};

/// A signed real number stored as `sign * exp(log_abs)`.
///
/// `sign == 0` represents exactly zero and `log_abs` is then ignored.
/// Products add logs and multiply signs, so quantities like
/// Γ(N²+Nν)·s^{1−N²−Nν} never materialize as raw floats.
#[derive(Clone, Copy, Debug)]
pub struct LogReal {
    pub log_abs: f64,
    pub sign: i8,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal { log_abs: f64::NEG_INFINITY, sign: 0 };

    /// Positive value from its natural log.
    pub fn from_ln(log_abs: f64) -> Self {
        LogReal { log_abs, sign: 1 }
    }

    pub fn new(sign: i8, log_abs: f64) -> Self {
        if sign == 0 {
            LogReal::ZERO
        } else {
            LogReal { log_abs, sign: sign.signum() }
        }
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            LogReal::ZERO
        } else {
            LogReal { log_abs: v.abs().ln(), sign: if v > 0.0 { 1 } else { -1 } }
        }
    }

    pub fn to_f64(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_abs.exp()
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        LogReal::new(self.sign.abs(), self.log_abs)
    }

    pub fn recip(self) -> Self {
        LogReal::new(self.sign, -self.log_abs)
    }

    /// Raise to a real power; requires a non-negative base unless the
    /// exponent is an integer.
    pub fn powf(self, p: f64) -> Self {
        if self.sign == 0 {
            return LogReal::ZERO;
        }
        debug_assert!(self.sign > 0 || p.fract() == 0.0);
        let sign = if self.sign > 0 || (p as i64) % 2 == 0 { 1 } else { -1 };
        LogReal::new(sign, self.log_abs * p)
    }
}

impl std::ops::Mul for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: LogReal) -> LogReal {
        LogReal::new(self.sign * rhs.sign, self.log_abs + rhs.log_abs)
    }
}

impl std::ops::Div for LogReal {
    type Output = LogReal;
    fn div(self, rhs: LogReal) -> LogReal {
        LogReal::new(self.sign * rhs.sign, self.log_abs - rhs.log_abs)
    }
}

impl std::ops::Neg for LogReal {
    type Output = LogReal;
    fn neg(self) -> LogReal {
        LogReal::new(-self.sign, self.log_abs)
    }
}

/// Relative magnitude below which a signed sum is declared exactly zero.
const CANCELLATION_EPS: f64 = 1e-14;

/// Signed sum of log-represented terms.
///
/// The accumulation is carried out relative to the largest term magnitude,
/// so the result is accurate whenever the sum is not dominated by
/// cancellation. Exact cancellation (|sum| < 1e-14 × max |term|) yields
/// sign 0.
pub fn log_sum_exp(terms: &[LogReal]) -> Result<LogReal> {
    if terms.is_empty() {
        return Err(Error::Domain("log_sum_exp of empty list".into()));
    }
    let mut max_log = f64::NEG_INFINITY;
    for t in terms {
        if t.sign != 0 && t.log_abs > max_log {
            max_log = t.log_abs;
        }
    }
    if max_log == f64::NEG_INFINITY {
        return Ok(LogReal::ZERO);
    }
    let mut acc = 0.0f64;
    let mut comp = 0.0f64; // Neumaier compensation
    for t in terms {
        if t.sign == 0 {
            continue;
        }
        let v = f64::from(t.sign) * (t.log_abs - max_log).exp();
        let s = acc + v;
        if acc.abs() >= v.abs() {
            comp += (acc - s) + v;
        } else {
            comp += (v - s) + acc;
        }
        acc = s;
    }
    let total = acc + comp;
    if total.abs() < CANCELLATION_EPS {
        return Ok(LogReal::ZERO);
    }
    Ok(LogReal::new(if total > 0.0 { 1 } else { -1 }, total.abs().ln() + max_log))
}

/// Streaming accumulator with the same semantics as [`log_sum_exp`].
#[derive(Clone, Copy, Debug)]
pub struct LogSumAcc {
    max_log: f64,
    acc: f64,
}

impl LogSumAcc {
    pub fn new() -> Self {
        LogSumAcc { max_log: f64::NEG_INFINITY, acc: 0.0 }
    }

    pub fn add(&mut self, t: LogReal) {
        if t.sign == 0 {
            return;
        }
        if t.log_abs > self.max_log {
            if self.max_log.is_finite() {
                self.acc *= (self.max_log - t.log_abs).exp();
            }
            self.max_log = t.log_abs;
        }
        self.acc += f64::from(t.sign) * (t.log_abs - self.max_log).exp();
    }

    pub fn total(self) -> LogReal {
        if !self.max_log.is_finite() || self.acc.abs() < CANCELLATION_EPS {
            return LogReal::ZERO;
        }
        LogReal::new(if self.acc > 0.0 { 1 } else { -1 }, self.acc.abs().ln() + self.max_log)
    }
}

impl Default for LogSumAcc {
    fn default() -> Self {
        Self::new()
    }
}
