//! Explicit Hopf-Cole path: `p`, `q`, and `p_x` as half-line kernel
//! integrals, evaluated by adaptive Gauss-Legendre panels in signed log
//! space. Requires constant boundary velocity (the kernel is derived for
//! that case); the boundary density may vary in time.
//!
//! For piecewise-linear `U0` every integrand is `exp(linear)` times a
//! kernel term, so panels are split at the kinks of `U0`, at every tilted
//! Gaussian center `x - m t` and image center `-x - m t`, and at the sign
//! change of the erfcx argument; the tail is truncated sixteen standard
//! deviations past the last center.

use super::kernel::{log_kernel, log_kernel_dx};
use super::quad::{integrate_piecewise, LogVal, SignedLogSum};
use super::{
    differentiate_row, Grid, PiecewiseLinear, PrimitiveData, ViscousError, ViscousField,
};
use rayon::prelude::*;

/// Kernel-integral fields in signed log space, row-major `[t][x]`.
#[derive(Debug, Clone)]
pub struct PqFields {
    pub grid: Grid,
    pub epsilon: f64,
    pub p: Vec<LogVal>,
    pub q: Vec<LogVal>,
    pub p_x: Vec<LogVal>,
}

const REL_TOL: f64 = 1e-9;

fn panel_points(u_prim: &PiecewiseLinear, x: f64, t: f64, eps: f64, u_b: f64) -> Vec<f64> {
    let sigma = (t * eps).sqrt();
    let mut pts = vec![0.0, x];
    for &k in &u_prim.knots {
        pts.push(k);
    }
    let mut reach = x.max(*u_prim.knots.last().unwrap());
    for m in u_prim.slopes() {
        let c = x - m * t;
        pts.push(c);
        pts.push(-x - m * t);
        reach = reach.max(c);
    }
    if u_b != 0.0 {
        let s = u_b * t - x;
        pts.push(s);
        reach = reach.max(s);
    }
    let y_max = reach + 16.0 * sigma;
    pts.push(y_max);
    let mut pts: Vec<f64> = pts
        .into_iter()
        .filter(|&p| p >= 0.0 && p <= y_max)
        .collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-14 * (1.0 + y_max));
    pts
}

/// `p(x, t)` and `p_x(x, t)`.
fn p_point(
    data: &PrimitiveData,
    eps: f64,
    u_b: f64,
    x: f64,
    t: f64,
) -> Result<(LogVal, LogVal), ViscousError> {
    let pts = panel_points(&data.u_primitive, x, t, eps, u_b);
    let mut f = |y: f64| {
        let w = -data.u_primitive.eval(y) / eps;
        log_kernel(x, y, t, eps, u_b).scaled(w)
    };
    let p = integrate_piecewise(&mut f, &pts, REL_TOL)?;
    let mut fx = |y: f64| {
        let w = -data.u_primitive.eval(y) / eps;
        log_kernel_dx(x, y, t, eps, u_b).scaled(w)
    };
    let px = integrate_piecewise(&mut fx, &pts, REL_TOL)?;
    Ok((p, px))
}

/// Main term of `q(x, t)` (the `R0`-weighted kernel integral).
fn q_main_point(
    data: &PrimitiveData,
    eps: f64,
    u_b: f64,
    x: f64,
    t: f64,
) -> Result<LogVal, ViscousError> {
    let mut pts = panel_points(&data.u_primitive, x, t, eps, u_b);
    for &k in &data.rho_primitive.knots {
        if k > 0.0 && k < *pts.last().unwrap() {
            pts.push(k);
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let mut f = |y: f64| {
        let r0 = data.rho_primitive.eval(y);
        if r0 == 0.0 {
            return LogVal::ZERO;
        }
        let w = -data.u_primitive.eval(y) / eps + r0.abs().ln();
        log_kernel(x, y, t, eps, u_b).scaled(w).mul_sign(r0.signum())
    };
    Ok(integrate_piecewise(&mut f, &pts, REL_TOL)?)
}

/// Cubic interpolation cache of `ln p(0, tau)` against `w = sqrt(tau)`;
/// heat-boundary expansions are smooth in `sqrt(tau)`, so a uniform grid in
/// `w` interpolates cleanly all the way to `tau = 0`.
struct P0Cache {
    w_max: f64,
    logs: Vec<f64>,
}

impl P0Cache {
    fn build(data: &PrimitiveData, eps: f64, u_b: f64, t: f64) -> Result<Self, ViscousError> {
        let n = 513usize;
        let w_max = t.sqrt();
        let mut logs = Vec::with_capacity(n);
        for i in 0..n {
            let w = w_max * i as f64 / (n - 1) as f64;
            let tau = w * w;
            if tau < 1e-12 {
                // short-time limit: the kernel collapses onto the data
                logs.push(-data.u_primitive.eval(0.0) / eps);
                continue;
            }
            let (p, _) = p_point(data, eps, u_b, 0.0, tau)?;
            if p.sign <= 0.0 {
                return Err(ViscousError::NonpositiveP { x: 0.0, t: tau });
            }
            logs.push(p.log);
        }
        Ok(P0Cache { w_max, logs })
    }

    fn log_p0(&self, tau: f64) -> f64 {
        let n = self.logs.len();
        let w = tau.max(0.0).sqrt().min(self.w_max);
        let h = self.w_max / (n - 1) as f64;
        let fi = (w / h).floor() as usize;
        let i = fi.clamp(1, n - 3);
        let s = w / h - i as f64;
        // 4-point Lagrange on nodes i-1..i+2
        let (f0, f1, f2, f3) = (
            self.logs[i - 1],
            self.logs[i],
            self.logs[i + 1],
            self.logs[i + 2],
        );
        let a = -s * (s - 1.0) * (s - 2.0) / 6.0;
        let b = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
        let c = -(s + 1.0) * s * (s - 2.0) / 2.0;
        let d = (s + 1.0) * s * (s - 1.0) / 6.0;
        a * f0 + b * f1 + c * f2 + d * f3
    }
}

/// Boundary correction of `q`:
/// `-(eps/2) int_0^t K(x,0,t-tau) p(0,tau) rho_B(tau) dtau`,
/// integrated in `sigma = sqrt(t - tau)` to remove the endpoint singularity.
fn q_boundary_point(
    cache: &P0Cache,
    data: &PrimitiveData,
    eps: f64,
    u_b: f64,
    x: f64,
    t: f64,
) -> Result<LogVal, ViscousError> {
    let s_max = t.sqrt();
    let mut f = |sigma: f64| {
        let tau = (t - sigma * sigma).max(0.0);
        let rho_b = data.rho_boundary.eval(tau);
        if rho_b == 0.0 || sigma == 0.0 {
            return LogVal::ZERO;
        }
        let k = log_kernel(x, 0.0, sigma * sigma, eps, u_b);
        k.scaled(cache.log_p0(tau) + (2.0 * sigma).ln() + rho_b.abs().ln())
            .mul_sign(rho_b.signum())
    };
    // graded panels toward sigma = 0 where the kernel sharpens
    let mut pts = vec![0.0];
    for k in (0..=8).rev() {
        pts.push(s_max * 0.25 * 0.5f64.powi(k));
    }
    for m in 3..=8 {
        pts.push(s_max * m as f64 / 8.0);
    }
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-16);
    let v = integrate_piecewise(&mut f, &pts, REL_TOL)?;
    Ok(v.scaled((eps / 2.0).ln()).neg())
}

/// Solve the linear heat problems for `(p, q)` on the grid by kernel
/// quadrature. Boundary velocity must be constant.
pub fn solve_pq_explicit(
    data: &PrimitiveData,
    eps: f64,
    grid: &Grid,
) -> Result<PqFields, ViscousError> {
    let u_b = data
        .u_boundary
        .constant_value()
        .ok_or(ViscousError::NonconstantBoundary)?;
    let nx = grid.xs.len();
    let mut p = Vec::with_capacity(nx * grid.ts.len());
    let mut q = Vec::with_capacity(nx * grid.ts.len());
    let mut p_x = Vec::with_capacity(nx * grid.ts.len());
    let rho_b_active = match &data.rho_boundary {
        super::BoundaryFn::Constant(c) => *c != 0.0,
        super::BoundaryFn::Profile(_) => true,
    };
    for &t in &grid.ts {
        let cache = if rho_b_active {
            Some(P0Cache::build(data, eps, u_b, t)?)
        } else {
            None
        };
        let row: Result<Vec<(LogVal, LogVal, LogVal)>, ViscousError> = grid
            .xs
            .par_iter()
            .map(|&x| {
                let (pv, pxv) = p_point(data, eps, u_b, x, t)?;
                let mut qv = q_main_point(data, eps, u_b, x, t)?;
                if let Some(cache) = &cache {
                    let b = q_boundary_point(cache, data, eps, u_b, x, t)?;
                    let mut s = SignedLogSum::new();
                    s.add(qv);
                    s.add(b);
                    qv = s.total();
                }
                Ok((pv, qv, pxv))
            })
            .collect();
        for (pv, qv, pxv) in row? {
            p.push(pv);
            q.push(qv);
            p_x.push(pxv);
        }
    }
    Ok(PqFields {
        grid: grid.clone(),
        epsilon: eps,
        p,
        q,
        p_x,
    })
}

/// Transform `(p, q, p_x)` back to the physical pair:
/// `u = -eps p_x / p` pointwise, `rho = d/dx (q/p)` by stencils on the grid.
pub fn viscous_fields(pq: &PqFields) -> Result<ViscousField, ViscousError> {
    let nx = pq.grid.xs.len();
    let nt = pq.grid.ts.len();
    let eps = pq.epsilon;
    let dx = pq.grid.dx();
    let mut u = Vec::with_capacity(nx * nt);
    let mut rho = Vec::with_capacity(nx * nt);
    for it in 0..nt {
        let mut ratio_row = Vec::with_capacity(nx);
        for ix in 0..nx {
            let idx = it * nx + ix;
            let pv = pq.p[idx];
            if pv.sign <= 0.0 {
                return Err(ViscousError::NonpositiveP {
                    x: pq.grid.xs[ix],
                    t: pq.grid.ts[it],
                });
            }
            u.push(-eps * pq.p_x[idx].ratio(&pv));
            ratio_row.push(pq.q[idx].ratio(&pv));
        }
        rho.extend(differentiate_row(&ratio_row, dx));
    }
    Ok(ViscousField {
        xs: pq.grid.xs.clone(),
        ts: pq.grid.ts.clone(),
        epsilon: eps,
        u,
        rho,
    })
}

/// Kernel-quadrature solve straight to the physical fields.
pub fn solve_explicit(
    data: &PrimitiveData,
    eps: f64,
    grid: &Grid,
) -> Result<ViscousField, ViscousError> {
    viscous_fields(&solve_pq_explicit(data, eps, grid)?)
}
