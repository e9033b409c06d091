//! Weak-solution verification: distributional residuals of the conservation
//! laws against smooth bumps, viscous residuals and their decay in `eps`,
//! data residuals for regularized initial/boundary traces, analytic mass
//! balance over space-time windows, and the `eps`-ladder convergence table.

use crate::solution::{PiecewiseSolution, RegionKind};
use crate::viscous::{PrimitiveData, StepFunction, ViscousError, ViscousField};
use rayon::prelude::*;

/// Standard smooth bump with unit maximum, supported on
/// `[center - width, center + width]`: `phi(x) = exp(1 - 1/(1 - s^2))` with
/// `s = (x - center)/width`. The first three derivatives are analytic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub center: f64,
    pub width: f64,
}

impl Bump {
    pub fn new(center: f64, width: f64) -> Self {
        assert!(width > 0.0 && center - width >= 0.0, "support must sit inside (0, inf)");
        Bump { center, width }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.width, self.center + self.width)
    }

    fn g_terms(s: f64) -> Option<(f64, f64, f64, f64)> {
        if s.abs() >= 1.0 {
            return None;
        }
        let g = 1.0 / (1.0 - s * s);
        let g1 = 2.0 * s * g * g;
        let g2 = 2.0 * g * g + 8.0 * s * s * g * g * g;
        let g3 = 24.0 * s * g * g * g + 48.0 * s * s * s * g * g * g * g;
        Some((g, g1, g2, g3))
    }

    pub fn value(&self, x: f64) -> f64 {
        let s = (x - self.center) / self.width;
        match Self::g_terms(s) {
            Some((g, ..)) => (1.0 - g).exp(),
            None => 0.0,
        }
    }

    pub fn d1(&self, x: f64) -> f64 {
        let s = (x - self.center) / self.width;
        match Self::g_terms(s) {
            Some((g, g1, ..)) => -g1 * (1.0 - g).exp() / self.width,
            None => 0.0,
        }
    }

    pub fn d2(&self, x: f64) -> f64 {
        let s = (x - self.center) / self.width;
        match Self::g_terms(s) {
            Some((g, g1, g2, _)) => (g1 * g1 - g2) * (1.0 - g).exp() / (self.width * self.width),
            None => 0.0,
        }
    }

    pub fn d3(&self, x: f64) -> f64 {
        let s = (x - self.center) / self.width;
        match Self::g_terms(s) {
            Some((g, g1, g2, g3)) => {
                (-g3 + 3.0 * g1 * g2 - g1 * g1 * g1) * (1.0 - g).exp()
                    / (self.width * self.width * self.width)
            }
            None => 0.0,
        }
    }
}

/// Distributional residual of the exact piecewise solution against a bump,
/// as the sup over sampled times in the window of the jump-bracket sums.
///
/// Smooth regions solve the equations identically (constants and fans), so
/// the residual reduces to per-front brackets: the momentum bracket
/// `phi(s) (u_r - u_l)((u_l + u_r)/2 - s')` and the mass bracket
/// `phi(s) (e' - accretion rate)`; both vanish exactly when the jump
/// conditions hold.
pub fn interior_residual_exact(
    sol: &PiecewiseSolution,
    phi: &Bump,
    t_window: (f64, f64),
    n_samples: usize,
) -> (f64, f64) {
    let (t_a, t_b) = t_window;
    let mut r_u = 0.0f64;
    let mut r_rho = 0.0f64;
    for k in 0..n_samples {
        let t = t_a + (t_b - t_a) * (k as f64 + 0.5) / n_samples as f64;
        let Some(slab) = sol
            .slabs
            .iter()
            .find(|s| t >= s.t_lo && t <= s.t_hi)
        else {
            continue;
        };
        let mut sum_u = 0.0;
        let mut sum_rho = 0.0;
        for (i, front) in slab.fronts.iter().enumerate() {
            if !front.active_at(t) {
                continue;
            }
            let x = front.geometry.position(t);
            if x <= 0.0 {
                continue;
            }
            let w = phi.value(x);
            if w == 0.0 {
                continue;
            }
            let s_prime = front.geometry.speed(t);
            let l = slab.regions[i].trace(x, t);
            let r = slab.regions[i + 1].trace(x, t);
            sum_u += w * (r.u - l.u) * (0.5 * (l.u + r.u) - s_prime);
            let accretion = l.rho * (l.u - s_prime) + r.rho * (s_prime - r.u);
            let e_rate = front.atom.map_or(0.0, |law| law.rate(t));
            sum_rho += w * (e_rate - accretion);
        }
        r_u = r_u.max(sum_u.abs());
        r_rho = r_rho.max(sum_rho.abs());
    }
    (r_u, r_rho)
}

/// Regular-density mass in `(0, x_max)` plus live atom strengths at time `t`.
fn mass_at(sol: &PiecewiseSolution, t: f64, x_max: f64) -> f64 {
    let slab = sol
        .slabs
        .iter()
        .find(|s| t >= s.t_lo && t <= s.t_hi)
        .expect("time inside horizon");
    let mut lo = 0.0f64;
    let mut mass = 0.0f64;
    let mut region = 0usize;
    for (i, front) in slab.fronts.iter().enumerate() {
        if !front.active_at(t) {
            region = i + 1;
            continue;
        }
        let pos = front.geometry.position(t);
        let hi = pos.clamp(lo, x_max);
        if let RegionKind::Constant(s) = slab.regions[region] {
            mass += s.rho * (hi - lo);
        }
        if let Some(law) = front.atom {
            if pos > 0.0 && pos < x_max {
                mass += law.eval(t);
            }
        }
        lo = hi;
        region = i + 1;
    }
    if let RegionKind::Constant(s) = slab.regions[region] {
        mass += s.rho * (x_max - lo).max(0.0);
    }
    mass
}

/// Time integral of the regular momentum flux `rho u` through a vertical
/// line `x = x_line`, split at slab bounds, front windows, and front
/// crossings of the line. Fan regions carry zero density, hence zero flux.
fn flux_through(sol: &PiecewiseSolution, x_line: f64, t_a: f64, t_b: f64) -> f64 {
    let mut cuts = vec![t_a, t_b];
    for slab in &sol.slabs {
        for bound in [slab.t_lo, slab.t_hi] {
            if bound > t_a && bound < t_b {
                cuts.push(bound);
            }
        }
        for front in &slab.fronts {
            for bound in [front.t_start, front.t_end] {
                if bound > t_a && bound < t_b {
                    cuts.push(bound);
                }
            }
            // crossing times of the front with x = x_line
            let (a2, a1, a0) = front.geometry.sqrt_poly();
            let mut s_min = 0.0;
            while let Some(s) =
                crate::front_tracking::smallest_positive_root(a2, a1, a0 - x_line, s_min)
            {
                let tc = s * s;
                if tc > t_b {
                    break;
                }
                if tc > t_a && tc >= front.t_start && tc <= front.t_end {
                    cuts.push(tc);
                }
                s_min = s * (1.0 + 1e-12) + 1e-15;
            }
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let tm = 0.5 * (lo + hi);
        if let Ok(sample) = sol.evaluate(x_line, tm) {
            total += sample.rho_regular * sample.u * (hi - lo);
        }
    }
    total
}

/// Mass-balance defect of the window `(0, x_max) x (t_a, t_b)`:
/// change of regular-plus-atom mass, minus inflow at `x = 0`, plus outflow
/// at `x = x_max`, plus delta mass discharged through the boundary.
/// Exactly zero for conservative solutions; all pieces are analytic except
/// the per-interval midpoint sampling of the constant flux values.
pub fn mass_balance(sol: &PiecewiseSolution, x_max: f64, t_a: f64, t_b: f64) -> f64 {
    let m_b = mass_at(sol, t_b, x_max);
    let m_a = mass_at(sol, t_a, x_max);
    let inflow = flux_through(sol, 0.0, t_a, t_b);
    let outflow = flux_through(sol, x_max, t_a, t_b);
    let exited: f64 = sol
        .exits
        .iter()
        .filter(|e| e.time > t_a && e.time <= t_b)
        .map(|e| e.mass)
        .sum();
    (m_b - m_a) - inflow + outflow + exited
}

/// Both evaluation routes for the viscous interior residual at one time
/// index: the direct form `int (u_t + u u_x) phi dx` from grid stencils and
/// the dual form `(eps/2) int u phi'' dx` obtained by moving derivatives
/// onto the test function.
pub struct ViscousResidualForms {
    pub direct_u: f64,
    pub dual_u: f64,
    pub direct_rho: f64,
    pub dual_rho: f64,
}

fn require_uniform(ts: &[f64]) -> Result<f64, ViscousError> {
    if ts.len() < 5 {
        return Err(ViscousError::BadGrid { min: 5 });
    }
    let dt = ts[1] - ts[0];
    for w in ts.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt {
            return Err(ViscousError::BadGrid { min: 5 });
        }
    }
    Ok(dt)
}

fn support_indices(field: &ViscousField, phi: &Bump) -> Result<(usize, usize), ViscousError> {
    let (lo, hi) = phi.support();
    let xs = &field.xs;
    if lo < xs[2] || hi > xs[xs.len() - 3] {
        return Err(ViscousError::SupportClipped { lo, hi });
    }
    let i_lo = xs.partition_point(|&x| x < lo);
    let i_hi = xs.partition_point(|&x| x <= hi);
    Ok((i_lo, i_hi))
}

/// Residual forms at one interior time index.
pub fn viscous_residual_forms(
    field: &ViscousField,
    phi: &Bump,
    it: usize,
) -> Result<ViscousResidualForms, ViscousError> {
    let dt = require_uniform(&field.ts)?;
    let nx = field.nx();
    let dx = field.xs[1] - field.xs[0];
    let (i_lo, i_hi) = support_indices(field, phi)?;
    let nt = field.ts.len();
    if it < 2 || it + 2 >= nt {
        return Err(ViscousError::BadGrid { min: 5 });
    }
    let eps = field.epsilon;
    let row = |k: usize| &field.u[k * nx..(k + 1) * nx];
    let rrow = |k: usize| &field.rho[k * nx..(k + 1) * nx];
    let u_x = crate::viscous::differentiate_row(row(it), dx);
    let flux: Vec<f64> = (0..nx)
        .map(|i| rrow(it)[i] * row(it)[i])
        .collect();
    let flux_x = crate::viscous::differentiate_row(&flux, dx);
    let mut direct_u = 0.0;
    let mut dual_u = 0.0;
    let mut direct_rho = 0.0;
    let mut dual_rho = 0.0;
    for i in i_lo..i_hi {
        let x = field.xs[i];
        let w = phi.value(x);
        let u_t = (row(it - 2)[i] - 8.0 * row(it - 1)[i] + 8.0 * row(it + 1)[i]
            - row(it + 2)[i])
            / (12.0 * dt);
        let rho_t = (rrow(it - 2)[i] - 8.0 * rrow(it - 1)[i] + 8.0 * rrow(it + 1)[i]
            - rrow(it + 2)[i])
            / (12.0 * dt);
        direct_u += (u_t + row(it)[i] * u_x[i]) * w * dx;
        direct_rho += (rho_t + flux_x[i]) * w * dx;
        dual_u += 0.5 * eps * row(it)[i] * phi.d2(x) * dx;
        dual_rho += 0.5 * eps * rrow(it)[i] * phi.d2(x) * dx;
    }
    Ok(ViscousResidualForms {
        direct_u,
        dual_u,
        direct_rho,
        dual_rho,
    })
}

/// Sup over interior grid times up to `t_max` of the direct-form residuals.
pub fn interior_residual_viscous(
    field: &ViscousField,
    phi: &Bump,
    t_max: f64,
) -> Result<(f64, f64), ViscousError> {
    let mut r_u = 0.0f64;
    let mut r_rho = 0.0f64;
    let nt = field.ts.len();
    for it in 2..nt.saturating_sub(2) {
        if field.ts[it] > t_max {
            break;
        }
        let forms = viscous_residual_forms(field, phi, it)?;
        r_u = r_u.max(forms.direct_u.abs());
        r_rho = r_rho.max(forms.direct_rho.abs());
    }
    Ok((r_u, r_rho))
}

/// The four data residuals of the regularized pair against the raw data:
/// initial `u` and `rho` rows tested in `x`, boundary `u` and `rho` columns
/// tested in `t`.
pub fn data_residual(
    field: &ViscousField,
    u0: &StepFunction,
    rho0: &StepFunction,
    u_b: f64,
    rho_b: f64,
    psi: &Bump,
) -> Result<[f64; 4], ViscousError> {
    let (lo, hi) = psi.support();
    let xs = &field.xs;
    let nx = xs.len();
    if lo < xs[0] || hi > xs[nx - 1] {
        return Err(ViscousError::SupportClipped { lo, hi });
    }
    let dx = xs[1] - xs[0];
    let mut init_u = 0.0;
    let mut init_rho = 0.0;
    for i in 0..nx {
        let x = xs[i];
        let w = psi.value(x);
        if w == 0.0 {
            continue;
        }
        init_u += (field.u_at(0, i) - u0.eval(x)) * w * dx;
        init_rho += (field.rho_at(0, i) - rho0.eval(x)) * w * dx;
    }
    let ts = &field.ts;
    if lo < ts[0] || hi > ts[ts.len() - 1] {
        return Err(ViscousError::SupportClipped { lo, hi });
    }
    let mut bdry_u = 0.0;
    let mut bdry_rho = 0.0;
    for it in 0..ts.len() - 1 {
        let dt = ts[it + 1] - ts[it];
        let t = ts[it];
        let w = psi.value(t);
        bdry_u += (field.u_at(it, 0) - u_b) * w * dt;
        bdry_rho += (field.rho_at(it, 0) - rho_b) * w * dt;
    }
    Ok([init_u, init_rho, bdry_u, bdry_rho])
}

/// Field-versus-exact comparison over grid points away from every front and
/// away from the boundary layer at `x = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub sup_u: f64,
    pub sup_rho: f64,
    pub l1_u: f64,
    pub l1_rho: f64,
    pub n_points: usize,
}

/// Distance from `(x, t)` to the nearest live front of the solution.
pub fn front_distance(sol: &PiecewiseSolution, x: f64, t: f64) -> f64 {
    let mut d = f64::INFINITY;
    if let Some(slab) = sol.slabs.iter().find(|s| t >= s.t_lo && t <= s.t_hi) {
        for front in &slab.fronts {
            if front.active_at(t) {
                let pos = front.geometry.position(t);
                if pos > 0.0 {
                    d = d.min((x - pos).abs());
                }
            }
        }
    }
    d
}

/// Compare a viscous field against the exact solution, excluding grid
/// points within `exclusion_radius` of any front or of the boundary
/// (the vanishing-viscosity statement is interior and boundary layers are
/// expected at `x = 0`).
pub fn compare_fields(
    exact: &PiecewiseSolution,
    field: &ViscousField,
    exclusion_radius: f64,
) -> Result<CompareReport, ViscousError> {
    let mut report = CompareReport {
        sup_u: 0.0,
        sup_rho: 0.0,
        l1_u: 0.0,
        l1_rho: 0.0,
        n_points: 0,
    };
    let dx = field.xs[1] - field.xs[0];
    for (it, &t) in field.ts.iter().enumerate() {
        if t <= 0.0 || t > exact.horizon {
            continue;
        }
        for (ix, &x) in field.xs.iter().enumerate() {
            if x < exclusion_radius || front_distance(exact, x, t) <= exclusion_radius {
                continue;
            }
            let sample = exact.evaluate(x, t).expect("inside horizon");
            let du = (field.u_at(it, ix) - sample.u).abs();
            let dr = (field.rho_at(it, ix) - sample.rho_regular).abs();
            report.sup_u = report.sup_u.max(du);
            report.sup_rho = report.sup_rho.max(dr);
            report.l1_u += du * dx;
            report.l1_rho += dr * dx;
            report.n_points += 1;
        }
    }
    if report.n_points == 0 {
        return Err(ViscousError::EmptyComparison);
    }
    Ok(report)
}

/// Atom mass recovered from the viscous density: integral of
/// `rho^eps - rho_exact_regular` over `|x - center| <= half_width` at one
/// time row.
pub fn atom_mass_estimate(
    field: &ViscousField,
    exact: &PiecewiseSolution,
    it: usize,
    center: f64,
    half_width: f64,
) -> f64 {
    let dx = field.xs[1] - field.xs[0];
    let t = field.ts[it];
    let mut acc = 0.0;
    for (ix, &x) in field.xs.iter().enumerate() {
        if (x - center).abs() <= half_width {
            let regular = exact
                .evaluate(x, t)
                .map(|s| s.rho_regular)
                .unwrap_or(0.0);
            acc += (field.rho_at(it, ix) - regular) * dx;
        }
    }
    acc
}

/// One `eps` entry of the convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceEntry {
    pub eps: f64,
    pub residual_u: f64,
    pub residual_rho: f64,
    pub distance_u: f64,
    pub distance_rho: f64,
}

/// `eps`-ladder study: residuals and interior distances per `eps`, with the
/// fitted log-log order of the distances. Orders are `None` (flagged
/// trivial) when the distances sit at rounding level.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub entries: Vec<ConvergenceEntry>,
    pub fitted_order_u: Option<f64>,
    pub fitted_order_rho: Option<f64>,
}

/// Least-squares slope of `ln err` against `ln eps`; `None` when any error
/// is at rounding level (order fit meaningless).
pub fn fit_order(eps: &[f64], errs: &[f64]) -> Option<f64> {
    if eps.len() < 2 || errs.iter().any(|&e| e < 1e-9) {
        return None;
    }
    let n = eps.len() as f64;
    let xs: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}

/// Run the viscous solver per `eps` (in parallel), measure residuals
/// against the bump set and interior distances against the exact solution,
/// and fit the convergence orders.
pub fn convergence_table(
    data: &PrimitiveData,
    exact: &PiecewiseSolution,
    eps_list: &[f64],
    bumps: &[Bump],
    grid: &crate::viscous::Grid,
    exclusion_radius: f64,
) -> Result<ResidualReport, ViscousError> {
    let entries: Result<Vec<ConvergenceEntry>, ViscousError> = eps_list
        .par_iter()
        .map(|&eps| {
            let field = crate::viscous::solve_explicit(data, eps, grid)?;
            let mut residual_u = 0.0f64;
            let mut residual_rho = 0.0f64;
            for bump in bumps {
                let (ru, rr) =
                    interior_residual_viscous(&field, bump, *field.ts.last().unwrap())?;
                residual_u = residual_u.max(ru);
                residual_rho = residual_rho.max(rr);
            }
            let cmp = compare_fields(exact, &field, exclusion_radius)?;
            Ok(ConvergenceEntry {
                eps,
                residual_u,
                residual_rho,
                distance_u: cmp.sup_u,
                distance_rho: cmp.sup_rho,
            })
        })
        .collect();
    let entries = entries?;
    let eps: Vec<f64> = entries.iter().map(|e| e.eps).collect();
    let du: Vec<f64> = entries.iter().map(|e| e.distance_u).collect();
    let dr: Vec<f64> = entries.iter().map(|e| e.distance_rho).collect();
    Ok(ResidualReport {
        fitted_order_u: fit_order(&eps, &du),
        fitted_order_rho: fit_order(&eps, &dr),
        entries,
    })
}
