//! Signed log-space arithmetic and adaptive Gauss-Legendre panels.
//!
//! Hopf-Cole integrands span dynamic ranges like `exp(+-1/eps)`, so every
//! quantity is carried as `(sign, log magnitude)` and sums are accumulated
//! with a running log-sum-exp per sign. Values only leave log space after a
//! ratio has been formed.

use thiserror::Error;

/// A real number stored as sign and natural log of its magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogVal {
    pub log: f64,
    /// `-1.0`, `0.0`, or `1.0`.
    pub sign: f64,
}

impl LogVal {
    pub const ZERO: LogVal = LogVal {
        log: f64::NEG_INFINITY,
        sign: 0.0,
    };

    pub fn new(sign: f64, log: f64) -> Self {
        if sign == 0.0 || log == f64::NEG_INFINITY {
            LogVal::ZERO
        } else {
            LogVal { log, sign }
        }
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            LogVal::ZERO
        } else {
            LogVal {
                log: v.abs().ln(),
                sign: v.signum(),
            }
        }
    }

    pub fn value(&self) -> f64 {
        self.sign * self.log.exp()
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0.0
    }

    /// Multiply by `exp(log_factor)`.
    pub fn scaled(self, log_factor: f64) -> Self {
        LogVal::new(self.sign, self.log + log_factor)
    }

    pub fn neg(self) -> Self {
        LogVal::new(-self.sign, self.log)
    }

    /// Multiply the sign by `s` (`s` in `{-1, 0, 1}`).
    pub fn mul_sign(self, s: f64) -> Self {
        LogVal::new(self.sign * s, self.log)
    }

    /// `self / other` as a plain f64; caller guarantees `other != 0`.
    pub fn ratio(&self, other: &LogVal) -> f64 {
        self.sign * other.sign * (self.log - other.log).exp()
    }
}

#[inline]
fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a >= b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// Accumulator for signed log-space sums.
#[derive(Debug, Clone, Copy)]
pub struct SignedLogSum {
    pos: f64,
    neg: f64,
}

impl SignedLogSum {
    pub fn new() -> Self {
        SignedLogSum {
            pos: f64::NEG_INFINITY,
            neg: f64::NEG_INFINITY,
        }
    }

    pub fn add(&mut self, v: LogVal) {
        if v.sign > 0.0 {
            self.pos = log_add(self.pos, v.log);
        } else if v.sign < 0.0 {
            self.neg = log_add(self.neg, v.log);
        }
    }

    pub fn add_scaled(&mut self, v: LogVal, log_factor: f64) {
        self.add(v.scaled(log_factor));
    }

    pub fn total(&self) -> LogVal {
        if self.pos == f64::NEG_INFINITY && self.neg == f64::NEG_INFINITY {
            return LogVal::ZERO;
        }
        if self.pos > self.neg {
            let d = (self.neg - self.pos).exp();
            LogVal::new(1.0, self.pos + (-d).ln_1p())
        } else if self.neg > self.pos {
            let d = (self.pos - self.neg).exp();
            LogVal::new(-1.0, self.neg + (-d).ln_1p())
        } else {
            LogVal::ZERO
        }
    }
}

impl Default for SignedLogSum {
    fn default() -> Self {
        Self::new()
    }
}

/// Signed log-space sum of two values.
pub fn log_sum2(a: LogVal, b: LogVal) -> LogVal {
    let mut s = SignedLogSum::new();
    s.add(a);
    s.add(b);
    s.total()
}

#[derive(Debug, Error, PartialEq)]
pub enum QuadError {
    #[error("adaptive quadrature failed to reach relative tolerance {tol} on [{a}, {b}] (estimate {estimate})")]
    QuadratureFailure { a: f64, b: f64, tol: f64, estimate: f64 },
}

// 16-point Gauss-Legendre rule on [-1, 1].
const GL16_X: [f64; 8] = [
    0.09501250983763744,
    0.28160355077925891,
    0.45801677765722739,
    0.61787624440264375,
    0.75540440835500303,
    0.86563120238783174,
    0.94457502307323258,
    0.98940093499164993,
];
const GL16_W: [f64; 8] = [
    0.18945061045506850,
    0.18260341504492359,
    0.16915651939500254,
    0.14959598881657673,
    0.12462897125553387,
    0.09515851168249278,
    0.06225352393864789,
    0.02715245941175409,
];

/// One 16-point panel in signed log space.
pub fn gl16_panel<F: FnMut(f64) -> LogVal>(f: &mut F, a: f64, b: f64) -> LogVal {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let log_half = half.abs().max(f64::MIN_POSITIVE).ln();
    let mut acc = SignedLogSum::new();
    for i in 0..8 {
        let dx = half * GL16_X[i];
        let lw = GL16_W[i].ln() + log_half;
        acc.add_scaled(f(mid - dx), lw);
        acc.add_scaled(f(mid + dx), lw);
    }
    acc.total()
}

/// Adaptive bisection of `[a, b]`: each panel is accepted once the whole-panel
/// estimate agrees with the sum of its halves to `rel_tol`, judged against
/// the larger of the panel magnitude and `log_floor` (the log magnitude of
/// the full integral, so that negligible tail panels are not refined
/// against their own roundoff noise).
pub fn integrate_adaptive<F: FnMut(f64) -> LogVal>(
    f: &mut F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_depth: usize,
    log_floor: f64,
) -> Result<LogVal, QuadError> {
    if !(b > a) {
        return Ok(LogVal::ZERO);
    }
    let whole = gl16_panel(f, a, b);
    let mut acc = SignedLogSum::new();
    let mut worst: f64 = 0.0;
    // explicit stack of (a, b, whole_estimate, depth)
    let mut stack = vec![(a, b, whole, 0usize)];
    let mut scale = whole.log.max(log_floor);
    while let Some((lo, hi, est, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = gl16_panel(f, lo, mid);
        let right = gl16_panel(f, mid, hi);
        let refined = log_sum2(left, right);
        let diff = log_sum2(refined, est.neg());
        scale = scale.max(refined.log);
        let ok = diff.is_zero() || diff.log <= rel_tol.ln() + scale;
        if ok {
            acc.add(left);
            acc.add(right);
        } else if depth >= max_depth {
            // give up on this panel but remember how bad it was
            acc.add(left);
            acc.add(right);
            worst = worst.max((diff.log - scale).exp());
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    if worst > rel_tol * 16.0 {
        return Err(QuadError::QuadratureFailure {
            a,
            b,
            tol: rel_tol,
            estimate: worst,
        });
    }
    Ok(acc.total())
}

/// Integrate over `[a, b]` split at the given interior breakpoints.
///
/// A first coarse pass fixes the global magnitude; the adaptive pass then
/// refines every segment relative to it.
pub fn integrate_piecewise<F: FnMut(f64) -> LogVal>(
    f: &mut F,
    points: &[f64],
    rel_tol: f64,
) -> Result<LogVal, QuadError> {
    let mut coarse = SignedLogSum::new();
    for w in points.windows(2) {
        if w[1] > w[0] {
            coarse.add(gl16_panel(f, w[0], w[1]));
        }
    }
    let log_floor = coarse.total().log;
    let mut acc = SignedLogSum::new();
    for w in points.windows(2) {
        if w[1] > w[0] {
            acc.add(integrate_adaptive(f, w[0], w[1], rel_tol, 24, log_floor)?);
        }
    }
    Ok(acc.total())
}
