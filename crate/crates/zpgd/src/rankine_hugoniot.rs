//! Jump conditions for delta shocks: the speed law `s'(t) = (u_- + u_+)/2`
//! and the strength law `e'(t)`, with closed-form solutions for straight
//! shocks and for shocks traversing rarefaction fans, plus a Runge-Kutta
//! oracle that adjudicates the closed forms in tests.
//!
//! Orientation convention: the strength rate is the mass accretion rate
//!
//! ```text
//! e'(t) = rho_l (u_l - s') + rho_r (s' - u_r)
//!       = -s' (rho_l - rho_r) + (rho_l u_l - rho_r u_r),
//! ```
//!
//! which is nonnegative for admissible shocks and reproduces the straight
//! shock strength `e(t) = (u_l - u_r)(rho_l + rho_r) t / 2`. It is also the
//! unique orientation under which the distributional residual of the mass
//! equation vanishes (see `residual::interior_residual_exact`).

use crate::solution::{FrontGeometry, State, StrengthLaw};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum JumpError {
    #[error("anchor time t1 = {t1} must be strictly positive")]
    InvalidAnchor { t1: f64 },
    #[error("strength law becomes negative at t = {t}")]
    NegativeStrength { t: f64 },
}

/// Which side of the front the rarefaction fan occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FanSide {
    Left,
    Right,
}

/// Shock speed `(u_minus + u_plus)/2`.
#[inline]
pub fn shock_speed(u_minus: f64, u_plus: f64) -> f64 {
    0.5 * (u_minus + u_plus)
}

/// Delta strength growth rate along a front moving at `s_prime` between the
/// left trace and the right trace.
#[inline]
pub fn strength_rate(s_prime: f64, left: State, right: State) -> f64 {
    left.rho * (left.u - s_prime) + right.rho * (s_prime - right.u)
}

/// Exact path of a shock inside a fan centered at `fan_center_x` against a
/// constant state of velocity `u_const`, anchored at `x(t1) = x1`:
/// solves `dx/dt = ((x - fan_center_x)/t + u_const)/2` in closed form,
///
/// ```text
/// x(t) = fan_center_x + u_const t + C sqrt(t),
/// C = (x1 - fan_center_x - u_const t1) / sqrt(t1).
/// ```
pub fn shock_into_fan_curve(
    fan_center_x: f64,
    u_const: f64,
    t1: f64,
    x1: f64,
) -> Result<FrontGeometry, JumpError> {
    if !(t1 > 0.0) {
        return Err(JumpError::InvalidAnchor { t1 });
    }
    let coeff = (x1 - fan_center_x - u_const * t1) / t1.sqrt();
    Ok(FrontGeometry::SqrtCurve {
        center_x: fan_center_x,
        u_const,
        coeff,
    })
}

/// Strength law along a square-root shock curve.
///
/// The fan side contributes zero density, so the accretion rate reduces to
/// `rho_const * (s'(t) - u_const)` when the fan is on the left and
/// `rho_const * (u_const - s'(t))` when it is on the right; with
/// `s'(t) = u_const + C/(2 sqrt(t))` both integrate to a pure `sqrt(t)` law
/// anchored at `e(t1) = e1`.
///
/// Fails with `NegativeStrength` when the resulting law decays below zero:
/// that signals a fan/constant orientation inconsistent with the curve's
/// coefficient sign (admissible configurations accrete mass).
pub fn strength_along_sqrt(
    curve: &FrontGeometry,
    const_side: State,
    fan_on: FanSide,
    t1: f64,
    e1: f64,
) -> Result<StrengthLaw, JumpError> {
    if !(t1 > 0.0) {
        return Err(JumpError::InvalidAnchor { t1 });
    }
    let coeff = match *curve {
        FrontGeometry::SqrtCurve { coeff, .. } => coeff,
        FrontGeometry::Line { .. } => 0.0,
    };
    let beta = match fan_on {
        FanSide::Left => const_side.rho * coeff,
        FanSide::Right => -const_side.rho * coeff,
    };
    let law = StrengthLaw::new(0.0, beta, e1 - beta * t1.sqrt());
    if beta < -1e-15 * const_side.rho.abs().max(1.0) {
        // strength decays; it crosses zero at sqrt(t) = -gamma/beta
        let s_zero = -law.gamma / beta;
        if s_zero > 0.0 {
            return Err(JumpError::NegativeStrength { t: s_zero * s_zero });
        }
    }
    Ok(law)
}

/// Classical fixed-step fourth-order Runge-Kutta integration, returning the
/// sampled trajectory `(t_k, y_k)` including both endpoints.
///
/// Test-side oracle for the closed forms above; deliberately independent of
/// every analytic path in this crate.
pub fn ode_oracle<F>(rhs: F, t1: f64, y1: &[f64], t_end: f64, steps: usize) -> Vec<(f64, Vec<f64>)>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    assert!(steps >= 1, "oracle needs at least one step");
    let h = (t_end - t1) / steps as f64;
    let mut t = t1;
    let mut y = y1.to_vec();
    let mut out = Vec::with_capacity(steps + 1);
    out.push((t, y.clone()));
    let n = y.len();
    for _ in 0..steps {
        let k1 = rhs(t, &y);
        let y2: Vec<f64> = (0..n).map(|i| y[i] + 0.5 * h * k1[i]).collect();
        let k2 = rhs(t + 0.5 * h, &y2);
        let y3: Vec<f64> = (0..n).map(|i| y[i] + 0.5 * h * k2[i]).collect();
        let k3 = rhs(t + 0.5 * h, &y3);
        let y4: Vec<f64> = (0..n).map(|i| y[i] + h * k3[i]).collect();
        let k4 = rhs(t + h, &y4);
        for i in 0..n {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += h;
        out.push((t, y.clone()));
    }
    out
}

/// Final state of [`ode_oracle`].
pub fn ode_oracle_final<F>(rhs: F, t1: f64, y1: &[f64], t_end: f64, steps: usize) -> Vec<f64>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    ode_oracle(rhs, t1, y1, t_end, steps).pop().unwrap().1
}
