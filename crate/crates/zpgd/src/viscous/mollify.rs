//! Data regularization at scale `eps`: multiply by the cutoff supported on
//! `[2 eps, inf)`, convolve with the standard compactly supported mollifier
//! at scale `eps`, then integrate to primitive form. The result is smooth,
//! vanishes on `[0, eps]`, and matches the raw primitive exactly for
//! `x >= 3 eps` up to an additive constant bounded by `3 eps sup|raw|`.

use super::{BoundaryFn, PiecewiseLinear, PrimitiveData, StepFunction};

/// `exp(-1/(1-s^2))` on `|s| < 1`, normalized to unit mass.
fn mollifier_unnormalized(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - s * s)).exp()
    }
}

/// Normalization constant `1 / int_{-1}^{1} exp(-1/(1-s^2)) ds`, computed
/// once by fine Simpson quadrature.
fn mollifier_norm() -> f64 {
    let n = 4096;
    let h = 2.0 / n as f64;
    let mut acc = 0.0;
    for i in 0..=n {
        let s = -1.0 + h * i as f64;
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += w * mollifier_unnormalized(s);
    }
    3.0 / (acc * h)
}

/// Mollified value of `raw * cutoff_[2eps,inf)` at `x`, by direct quadrature
/// of the convolution over the mollifier support.
fn mollified_value(raw: &StepFunction, eps: f64, norm: f64, x: f64) -> f64 {
    // integrand raw(y) chi(y) eta_eps(x - y), y in (x - eps, x + eps);
    // split at step breaks and at the cutoff edge for exact panels
    let lo = (x - eps).max(0.0);
    let hi = x + eps;
    let mut pts = vec![lo, hi, 2.0 * eps];
    for &b in &raw.breaks {
        pts.push(b);
    }
    pts.retain(|&p| p >= lo && p <= hi);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let mut acc = 0.0;
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        // dense composite Simpson per panel: the mollifier is smooth but
        // carries large high-order derivatives near its support edges
        let n = 256;
        let h = (b - a) / n as f64;
        let mut panel = 0.0;
        for i in 0..=n {
            let y = a + h * i as f64;
            let wgt = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let v = if y >= 2.0 * eps { raw.eval(y) } else { 0.0 };
            panel += wgt * v * mollifier_unnormalized((x - y) / eps);
        }
        acc += panel * h / 3.0;
    }
    acc * norm / eps
}

/// Mollify a step function and return the primitive of the result as a
/// densely sampled piecewise-linear function (exactly linear beyond the
/// smoothing zone, where the mollified data are constant again).
pub fn mollify_step_primitive(raw: &StepFunction, eps: f64) -> PiecewiseLinear {
    let norm = mollifier_norm();
    let last_break = raw.breaks.last().copied().unwrap_or(0.0);
    // smooth region: [0, 3 eps] plus a collar around every break
    let smooth_end = (3.0 * eps).max(last_break + 2.0 * eps);
    let n = ((smooth_end / eps) * 64.0).ceil() as usize + 1;
    let h = smooth_end / (n - 1) as f64;
    let mut knots = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    let mut acc = 0.0;
    let mut prev = 0.0;
    for i in 0..n {
        let x = h * i as f64;
        let v = mollified_value(raw, eps, norm, x);
        if i > 0 {
            acc += 0.5 * (prev + v) * h;
        }
        knots.push(x);
        values.push(acc);
        prev = v;
    }
    PiecewiseLinear {
        knots,
        values,
        end_slope: *raw.values.last().unwrap(),
    }
}

/// Regularized primitive data for the viscous solvers: initial pair
/// mollified in `x`, boundary pair mollified in `t`; boundary traces are
/// returned as sampled profiles.
pub fn mollify_data(
    u0: &StepFunction,
    rho0: &StepFunction,
    u_b: f64,
    rho_b: f64,
    eps: f64,
) -> PrimitiveData {
    let norm = mollifier_norm();
    let sample_boundary = |c: f64| -> BoundaryFn {
        let raw = StepFunction::constant(c);
        let t_end = 4.0 * eps;
        let n = 257;
        let h = t_end / (n - 1) as f64;
        let mut knots = Vec::with_capacity(n);
        let mut vals = Vec::with_capacity(n);
        for i in 0..n {
            let t = h * i as f64;
            knots.push(t);
            vals.push(mollified_value(&raw, eps, norm, t));
        }
        BoundaryFn::Profile(PiecewiseLinear {
            knots,
            values: vals,
            end_slope: 0.0,
        })
    };
    PrimitiveData {
        u_primitive: mollify_step_primitive(u0, eps),
        rho_primitive: mollify_step_primitive(rho0, eps),
        u_boundary: sample_boundary(u_b),
        rho_boundary: sample_boundary(rho_b),
    }
}
