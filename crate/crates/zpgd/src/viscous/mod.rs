//! Modified adhesion approximation `(u^eps, rho^eps)` of the inviscid
//! system, computed through the Hopf-Cole substitution `u = -eps p_x / p`,
//! `rho = (q/p)_x`, where `p` and `q` solve half-line heat problems with
//! Robin boundary conditions.
//!
//! Two independent routes are provided and cross-validated in the tests:
//! an explicit heat-kernel quadrature for constant boundary velocity
//! ([`explicit`]) and a Crank-Nicolson finite-difference solve that also
//! accepts time-varying boundary velocity ([`fd`]).

pub mod explicit;
pub mod fd;
pub mod kernel;
pub mod mollify;
pub mod quad;

pub use explicit::{solve_explicit, solve_pq_explicit, viscous_fields, PqFields};
pub use fd::solve_pq_fd;
pub use kernel::{erfcx, heat_kernel, log_erfcx, log_kernel, log_kernel_dx};
pub use mollify::mollify_data;
pub use quad::{LogVal, QuadError, SignedLogSum};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ViscousError {
    #[error("quadrature failure: {0}")]
    QuadratureFailure(#[from] QuadError),
    #[error("nonpositive p at grid point (x={x}, t={t}); upstream quadrature is unusable")]
    NonpositiveP { x: f64, t: f64 },
    #[error("tridiagonal system became singular at t = {t}")]
    SingularSystem { t: f64 },
    #[error("grid must be uniform in x with at least {min} points")]
    BadGrid { min: usize },
    #[error("the explicit kernel path requires constant boundary velocity; use the finite-difference path")]
    NonconstantBoundary,
    #[error("exclusion radius removed every comparison point")]
    EmptyComparison,
    #[error("test-function support [{lo}, {hi}] is not covered by the field grid")]
    SupportClipped { lo: f64, hi: f64 },
}

/// Bounded measurable step function on `[0, inf)`:
/// `values[i]` on `(breaks[i-1], breaks[i])`, `values.last()` beyond.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    pub breaks: Vec<f64>,
    pub values: Vec<f64>,
}

impl StepFunction {
    pub fn constant(c: f64) -> Self {
        StepFunction {
            breaks: vec![],
            values: vec![c],
        }
    }

    pub fn two_state(left: f64, right: f64, x0: f64) -> Self {
        if left == right {
            StepFunction::constant(left)
        } else {
            StepFunction {
                breaks: vec![x0],
                values: vec![left, right],
            }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.breaks.iter().take_while(|&&b| x > b).count();
        self.values[i]
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Primitive `F(x) = int_0^x f`, a piecewise-linear function.
    pub fn primitive(&self) -> PiecewiseLinear {
        let mut knots = vec![0.0];
        let mut values = vec![0.0];
        for (i, &b) in self.breaks.iter().enumerate() {
            let x_prev = *knots.last().unwrap();
            let v_prev = *values.last().unwrap();
            knots.push(b);
            values.push(v_prev + self.values[i] * (b - x_prev));
        }
        PiecewiseLinear {
            knots,
            values,
            end_slope: *self.values.last().unwrap(),
        }
    }
}

/// Continuous piecewise-linear function on `[0, inf)`, linear with
/// `end_slope` beyond the last knot.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    pub knots: Vec<f64>,
    pub values: Vec<f64>,
    pub end_slope: f64,
}

impl PiecewiseLinear {
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.knots.len();
        if x >= self.knots[n - 1] {
            return self.values[n - 1] + self.end_slope * (x - self.knots[n - 1]);
        }
        if x <= self.knots[0] {
            // constant extension left of the first knot (data live on x >= 0)
            return self.values[0];
        }
        let i = match self
            .knots
            .binary_search_by(|k| k.partial_cmp(&x).unwrap())
        {
            Ok(i) => return self.values[i],
            Err(i) => i,
        };
        let w = (x - self.knots[i - 1]) / (self.knots[i] - self.knots[i - 1]);
        self.values[i - 1] + w * (self.values[i] - self.values[i - 1])
    }

    /// Derivative just right of `x`.
    pub fn slope_after(&self, x: f64) -> f64 {
        let n = self.knots.len();
        if x >= self.knots[n - 1] {
            return self.end_slope;
        }
        let i = self.knots.iter().take_while(|&&k| k <= x).count();
        if i == 0 {
            return self.slope_after(self.knots[0]);
        }
        (self.values[i] - self.values[i - 1]) / (self.knots[i] - self.knots[i - 1])
    }

    /// All distinct slopes, including the end slope.
    pub fn slopes(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.knots.len());
        for i in 1..self.knots.len() {
            out.push((self.values[i] - self.values[i - 1]) / (self.knots[i] - self.knots[i - 1]));
        }
        out.push(self.end_slope);
        out.dedup();
        out
    }

    pub fn max_abs_slope(&self) -> f64 {
        self.slopes().iter().fold(0.0, |m, s| m.max(s.abs()))
    }
}

/// Boundary data as a function of time.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryFn {
    Constant(f64),
    /// Sampled profile, linearly interpolated.
    Profile(PiecewiseLinear),
}

impl BoundaryFn {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            BoundaryFn::Constant(c) => *c,
            BoundaryFn::Profile(p) => p.eval(t),
        }
    }

    pub fn constant_value(&self) -> Option<f64> {
        match self {
            BoundaryFn::Constant(c) => Some(*c),
            BoundaryFn::Profile(_) => None,
        }
    }

    pub fn sup_abs_on(&self, t_max: f64) -> f64 {
        match self {
            BoundaryFn::Constant(c) => c.abs(),
            BoundaryFn::Profile(p) => {
                let mut m = p.eval(0.0).abs().max(p.eval(t_max).abs());
                for &k in &p.knots {
                    if k <= t_max {
                        m = m.max(p.eval(k).abs());
                    }
                }
                m
            }
        }
    }
}

/// Primitive-form data for the Hopf-Cole solvers: `U0(x) = int_0^x u0`,
/// `R0(x) = int_0^x rho0` (both piecewise linear), plus boundary traces.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveData {
    pub u_primitive: PiecewiseLinear,
    pub rho_primitive: PiecewiseLinear,
    pub u_boundary: BoundaryFn,
    pub rho_boundary: BoundaryFn,
}

impl PrimitiveData {
    pub fn new(
        u0: &StepFunction,
        rho0: &StepFunction,
        u_boundary: BoundaryFn,
        rho_boundary: BoundaryFn,
    ) -> Self {
        PrimitiveData {
            u_primitive: u0.primitive(),
            rho_primitive: rho0.primitive(),
            u_boundary,
            rho_boundary,
        }
    }

    /// Two-state interior data against constant boundary data.
    pub fn interaction(
        u_b: f64,
        rho_b: f64,
        u_l: f64,
        rho_l: f64,
        u_r: f64,
        rho_r: f64,
        x0: f64,
    ) -> Self {
        PrimitiveData::new(
            &StepFunction::two_state(u_l, u_r, x0),
            &StepFunction::two_state(rho_l, rho_r, x0),
            BoundaryFn::Constant(u_b),
            BoundaryFn::Constant(rho_b),
        )
    }

    /// Largest velocity magnitude in data and boundary up to `t_max`
    /// (the maximum-principle bound for `u^eps`).
    pub fn velocity_bound(&self, t_max: f64) -> f64 {
        self.u_primitive
            .max_abs_slope()
            .max(self.u_boundary.sup_abs_on(t_max))
    }
}

/// Rectangular sample grid; `xs` must be uniform for the stencil paths.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
}

impl Grid {
    pub fn uniform(x_lo: f64, x_hi: f64, nx: usize, ts: Vec<f64>) -> Self {
        let dx = (x_hi - x_lo) / (nx - 1) as f64;
        Grid {
            xs: (0..nx).map(|i| x_lo + dx * i as f64).collect(),
            ts,
        }
    }

    pub fn dx(&self) -> f64 {
        self.xs[1] - self.xs[0]
    }
}

/// Grid-sampled viscous pair, row-major in `[t][x]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ViscousField {
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
    pub epsilon: f64,
    pub u: Vec<f64>,
    pub rho: Vec<f64>,
}

impl ViscousField {
    pub fn nx(&self) -> usize {
        self.xs.len()
    }

    pub fn u_at(&self, it: usize, ix: usize) -> f64 {
        self.u[it * self.xs.len() + ix]
    }

    pub fn rho_at(&self, it: usize, ix: usize) -> f64 {
        self.rho[it * self.xs.len() + ix]
    }

    pub fn max_abs_u(&self) -> f64 {
        self.u.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Excess of `max |u|` over the maximum-principle bound, if positive.
    pub fn maximum_principle_excess(&self, data: &PrimitiveData) -> f64 {
        let bound = data.velocity_bound(*self.ts.last().unwrap());
        (self.max_abs_u() - bound).max(0.0)
    }

    /// Delimited export: `x t u rho`, one row per grid point.
    pub fn to_table(&self) -> String {
        let mut rows = Vec::with_capacity(self.xs.len() * self.ts.len());
        for (it, &t) in self.ts.iter().enumerate() {
            for (ix, &x) in self.xs.iter().enumerate() {
                rows.push(vec![x, t, self.u_at(it, ix), self.rho_at(it, ix)]);
            }
        }
        crate::textio::write_table(&["x", "t", "u", "rho"], &rows)
    }
}

/// Fourth-order centered derivative of a sampled row, with cubic-exact
/// four-point stencils at the edges.
pub(crate) fn differentiate_row(vals: &[f64], dx: f64) -> Vec<f64> {
    let n = vals.len();
    let mut out = vec![0.0; n];
    for i in 0..n {
        out[i] = if i >= 2 && i + 2 < n {
            (vals[i - 2] - 8.0 * vals[i - 1] + 8.0 * vals[i + 1] - vals[i + 2]) / (12.0 * dx)
        } else if i == 0 {
            (-11.0 * vals[0] + 18.0 * vals[1] - 9.0 * vals[2] + 2.0 * vals[3]) / (6.0 * dx)
        } else if i == 1 {
            (-2.0 * vals[0] - 3.0 * vals[1] + 6.0 * vals[2] - vals[3]) / (6.0 * dx)
        } else if i == n - 2 {
            (vals[n - 4] - 6.0 * vals[n - 3] + 3.0 * vals[n - 2] + 2.0 * vals[n - 1]) / (6.0 * dx)
        } else {
            (-2.0 * vals[n - 4] + 9.0 * vals[n - 3] - 18.0 * vals[n - 2] + 11.0 * vals[n - 1])
                / (6.0 * dx)
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_primitive_is_broken_line() {
        let s = StepFunction::two_state(2.0, -1.0, 1.5);
        let p = s.primitive();
        assert_eq!(p.eval(0.0), 0.0);
        assert!((p.eval(1.0) - 2.0).abs() < 1e-15);
        assert!((p.eval(1.5) - 3.0).abs() < 1e-15);
        assert!((p.eval(2.5) - 2.0).abs() < 1e-15);
        assert_eq!(p.slope_after(0.5), 2.0);
        assert_eq!(p.slope_after(2.0), -1.0);
        assert_eq!(p.slopes(), vec![2.0, -1.0]);
    }

    #[test]
    fn derivative_stencil_exact_on_cubics() {
        let xs: Vec<f64> = (0..9).map(|i| 0.1 * i as f64).collect();
        let vals: Vec<f64> = xs.iter().map(|x| x * x * x - 2.0 * x).collect();
        let d = differentiate_row(&vals, 0.1);
        for (i, &x) in xs.iter().enumerate() {
            let exact = 3.0 * x * x - 2.0;
            assert!((d[i] - exact).abs() < 1e-12, "i={i}: {} vs {exact}", d[i]);
        }
    }
}
