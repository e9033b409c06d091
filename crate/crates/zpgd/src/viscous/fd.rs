//! Crank-Nicolson solve of the linear heat problems for `(p, q)` with a
//! ghost-point Robin discretization at `x = 0` and far-field Dirichlet
//! values from the unperturbed data at `x = x_max`. Supports time-varying
//! boundary velocity; this is the oracle for the explicit kernel path and
//! the only path for nonconstant `u_B`.
//!
//! `p` and `q` are evolved scaled by `exp(offset/eps)` with `offset` the
//! midrange of `U0` over the domain; the scaling cancels in `u = -eps p_x/p`
//! and `rho = (q/p)_x` and keeps both unknowns inside f64 range.

use super::{differentiate_row, PrimitiveData, ViscousError, ViscousField};

/// Thomas algorithm for a tridiagonal system; `diag` and `rhs` are consumed.
fn solve_tridiagonal(
    lower: &[f64],
    diag: &mut [f64],
    upper: &[f64],
    rhs: &mut [f64],
    t: f64,
) -> Result<(), ViscousError> {
    let n = diag.len();
    for i in 1..n {
        if diag[i - 1] == 0.0 {
            return Err(ViscousError::SingularSystem { t });
        }
        let w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if diag[n - 1] == 0.0 {
        return Err(ViscousError::SingularSystem { t });
    }
    rhs[n - 1] /= diag[n - 1];
    for i in (0..n - 1).rev() {
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
    }
    Ok(())
}

struct Workspace {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    rhs: Vec<f64>,
}

/// One theta-scheme step of `v_t = (eps/2) v_xx` with the Robin row
/// `eps v_x(0) + u_b(t) v(0) = g(t)` (ghost point, second order) and a
/// Dirichlet far value; `theta = 1/2` is the trapezoidal step, `theta = 1`
/// backward Euler for the startup smoothing.
#[allow(clippy::too_many_arguments)]
fn theta_step(
    v: &mut [f64],
    ws: &mut Workspace,
    h: f64,
    dt: f64,
    eps: f64,
    theta: f64,
    t_old: f64,
    ub_old: f64,
    ub_new: f64,
    g_old: f64,
    g_new: f64,
    far_new: f64,
) -> Result<(), ViscousError> {
    let n = v.len();
    let lam = 0.5 * eps * dt / (h * h);
    let (wi, we) = (theta * lam, (1.0 - theta) * lam); // implicit/explicit weights
    for i in 1..n - 1 {
        ws.lower[i] = -wi;
        ws.diag[i] = 1.0 + 2.0 * wi;
        ws.upper[i] = -wi;
        ws.rhs[i] = v[i] + we * (v[i - 1] - 2.0 * v[i] + v[i + 1]);
    }
    // ghost point: v[-1] = v[1] + (2h/eps)(ub v[0] - g), so the second
    // difference at the boundary row reads 2 v[1] + (2h ub/eps - 2) v[0]
    // - (2h/eps) g
    let c_old = 2.0 * h * ub_old / eps;
    let c_new = 2.0 * h * ub_new / eps;
    ws.lower[0] = 0.0;
    ws.diag[0] = 1.0 - wi * (c_new - 2.0);
    ws.upper[0] = -2.0 * wi;
    ws.rhs[0] = v[0]
        + we * (2.0 * v[1] + (c_old - 2.0) * v[0])
        - (2.0 * h / eps) * (we * g_old + wi * g_new);
    ws.lower[n - 1] = 0.0;
    ws.diag[n - 1] = 1.0;
    ws.upper[n - 1] = 0.0;
    ws.rhs[n - 1] = far_new;
    solve_tridiagonal(&ws.lower, &mut ws.diag, &ws.upper, &mut ws.rhs, t_old)?;
    v.copy_from_slice(&ws.rhs);
    Ok(())
}

/// Finite-difference solve on `[0, x_max]` with `nx` uniform points and time
/// step `dt` (adjusted to divide the final output time), sampled at the
/// requested output times snapped to whole steps.
pub fn solve_pq_fd(
    data: &PrimitiveData,
    eps: f64,
    x_max: f64,
    nx: usize,
    dt: f64,
    out_ts: &[f64],
) -> Result<ViscousField, ViscousError> {
    if nx < 8 {
        return Err(ViscousError::BadGrid { min: 8 });
    }
    let h = x_max / (nx - 1) as f64;
    let xs: Vec<f64> = (0..nx).map(|i| h * i as f64).collect();

    let u0_vals: Vec<f64> = xs.iter().map(|&x| data.u_primitive.eval(x)).collect();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in &u0_vals {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let offset = 0.5 * (lo + hi);

    let mut p: Vec<f64> = u0_vals.iter().map(|&v| ((offset - v) / eps).exp()).collect();
    let mut q: Vec<f64> = xs
        .iter()
        .zip(&p)
        .map(|(&x, &pv)| data.rho_primitive.eval(x) * pv)
        .collect();

    // far field: data are unperturbed linear there, so (p, q) follow the
    // whole-line solution for that linear profile
    let u_far = data.u_primitive.end_slope;
    let rho_far = data.rho_primitive.end_slope;
    let u0_end = data.u_primitive.eval(x_max);
    let r0_end = data.rho_primitive.eval(x_max);
    let p_far = |t: f64| ((offset - u0_end + 0.5 * u_far * u_far * t) / eps).exp();
    let q_far = |t: f64| (r0_end - rho_far * u_far * t) * p_far(t);

    let mut ws = Workspace {
        lower: vec![0.0; nx],
        diag: vec![0.0; nx],
        upper: vec![0.0; nx],
        rhs: vec![0.0; nx],
    };

    let t_end = *out_ts.last().expect("at least one output time");
    let n_steps = (t_end / dt).round().max(1.0) as usize;
    let dt = t_end / n_steps as f64;
    let out_steps: Vec<usize> = out_ts
        .iter()
        .map(|&t| ((t / dt).round() as usize).min(n_steps))
        .collect();

    let mut u_rows = Vec::with_capacity(out_steps.len() * nx);
    let mut rho_rows = Vec::with_capacity(out_steps.len() * nx);
    let mut ts_actual = Vec::with_capacity(out_steps.len());

    let emit = |step: usize, p: &[f64], q: &[f64], u_rows: &mut Vec<f64>, rho_rows: &mut Vec<f64>, ts_actual: &mut Vec<f64>| -> Result<(), ViscousError> {
        let t = step as f64 * dt;
        if let Some(ix) = p.iter().position(|&v| !(v > 0.0)) {
            return Err(ViscousError::NonpositiveP { x: xs[ix], t });
        }
        let px = differentiate_row(p, h);
        let ub_t = data.u_boundary.eval(t);
        for i in 0..nx {
            let u = if i == 0 {
                ub_t // the Robin row pins u(0) = u_B exactly
            } else if i == nx - 1 {
                u_far
            } else {
                -eps * px[i] / p[i]
            };
            u_rows.push(u);
        }
        let ratio: Vec<f64> = (0..nx).map(|i| q[i] / p[i]).collect();
        let mut rho = differentiate_row(&ratio, h);
        // centered difference through the scheme's own ghost values: the
        // discrete Robin pair makes (q/p)_x(0) = rho_B(t) identically
        rho[0] = data.rho_boundary.eval(t);
        rho_rows.extend(rho);
        ts_actual.push(t);
        Ok(())
    };

    if out_steps.contains(&0) {
        emit(0, &p, &q, &mut u_rows, &mut rho_rows, &mut ts_actual)?;
    }
    for step in 0..n_steps {
        let t_old = step as f64 * dt;
        // the trapezoidal step barely damps grid-scale modes excited by
        // kinks in the initial data, so the first step is smoothed by two
        // backward-Euler half-steps (Rannacher startup)
        let substeps: &[(f64, f64, f64)] = if step == 0 {
            &[(1.0, 0.0, 0.5), (1.0, 0.5, 1.0)]
        } else {
            &[(0.5, 0.0, 1.0)]
        };
        for &(theta, f_lo, f_hi) in substeps {
            let s_old = t_old + f_lo * dt;
            let s_new = t_old + f_hi * dt;
            let sub_dt = s_new - s_old;
            let ub_old = data.u_boundary.eval(s_old);
            let ub_new = data.u_boundary.eval(s_new);
            let p0_old = p[0];
            theta_step(
                &mut p, &mut ws, h, sub_dt, eps, theta, s_old, ub_old, ub_new, 0.0, 0.0,
                p_far(s_new),
            )?;
            // q's Robin source eps p(0,t) rho_B(t) uses p at each time level
            let g_old = eps * p0_old * data.rho_boundary.eval(s_old);
            let g_new = eps * p[0] * data.rho_boundary.eval(s_new);
            theta_step(
                &mut q, &mut ws, h, sub_dt, eps, theta, s_old, ub_old, ub_new, g_old, g_new,
                q_far(s_new),
            )?;
        }
        if out_steps.contains(&(step + 1)) {
            emit(step + 1, &p, &q, &mut u_rows, &mut rho_rows, &mut ts_actual)?;
        }
    }

    Ok(ViscousField {
        xs,
        ts: ts_actual,
        epsilon: eps,
        u: u_rows,
        rho: rho_rows,
    })
}
