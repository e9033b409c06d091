//! Exact-solution engine and viscous-approximation verifier for the
//! one-dimensional zero-pressure gas dynamics system
//!
//! ```text
//! u_t + (u^2/2)_x = 0,
//! rho_t + (rho u)_x = 0,
//! ```
//!
//! posed in the quarter plane `x > 0, t > 0` with constant initial data on
//! the half line and constant Dirichlet data on the boundary, the latter
//! attained only in the weak sense of an admissible trace set.
//!
//! The crate has two halves that check each other:
//!
//! * an exact side ([`riemann`], [`rankine_hugoniot`], [`front_tracking`])
//!   that builds piecewise solutions out of contact lines, shocks carrying
//!   delta measures in the density, rarefaction fans and square-root shock
//!   curves, evolved through all wave interactions by event-driven front
//!   tracking, and
//! * a viscous side ([`viscous`]) that solves the modified adhesion system
//!   `u_t + (u^2/2)_x = (eps/2) u_xx`, `rho_t + (rho u)_x = (eps/2) rho_xx`
//!   through the Hopf-Cole transformation, either by an explicit half-line
//!   heat-kernel representation or by a Crank-Nicolson finite-difference
//!   solve, and converges to the exact side as `eps -> 0`.
//!
//! [`residual`] measures how well either side satisfies the conservation
//! laws against smooth compactly supported test functions, and
//! [`textio`] serializes solutions and data tables to deterministic text.

pub mod front_tracking;
pub mod rankine_hugoniot;
pub mod residual;
pub mod riemann;
pub mod solution;
pub mod textio;
pub mod viscous;

pub use solution::{
    CaseLabel, EvalError, ExitRecord, FrontCurve, FrontGeometry, PiecewiseSolution, RegionKind,
    SolutionSample, State, StrengthLaw, TimeSlab, Violation,
};
