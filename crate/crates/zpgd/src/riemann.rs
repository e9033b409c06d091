//! Exact Riemann solutions: the interior two-state problem and the boundary
//! problem with weak (admissible-set) boundary conditions.
//!
//! Interior dispatch on `u_L` vs `u_R`: equal speeds give a contact line,
//! `u_L < u_R` a centered rarefaction with zero density inside, and
//! `u_L > u_R` a delta shock of speed `(u_L + u_R)/2` whose strength grows
//! linearly by mass accretion.
//!
//! Boundary dispatch follows the admissible set
//! `E(u_b) = (-inf, 0]` for `u_b <= 0` and `{u_b} u (-inf, -u_b]` for
//! `u_b > 0`: depending on the signs of `u_b` and the interior velocity the
//! boundary emits a contact, nothing (inert boundary), a rarefaction, a fan
//! anchored on the corner, or a delta shock. Sign patterns the admissible
//! set leaves without an entering wave (u_0 < u_b with u_0 + u_b <= 0, and
//! u_0 = u_b = 0) resolve to the inert-boundary branch, since the would-be
//! shock has nonpositive speed and never enters `x > 0`.

use crate::rankine_hugoniot::{shock_speed, strength_rate};
use crate::solution::{
    ExitRecord, FrontCurve, FrontGeometry, PiecewiseSolution, RegionKind, State, StrengthLaw,
};

/// Interior Riemann data: two states separated at `x = x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorRiemannData {
    pub left: State,
    pub right: State,
    pub x0: f64,
}

/// Boundary Riemann data: boundary state on `x = 0`, interior state at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryRiemannData {
    pub boundary: State,
    pub interior: State,
}

/// Membership in the admissible boundary-trace set `E(u_b)`.
///
/// Interval endpoints are inclusive and comparisons are exact.
pub fn admissible_set_contains(u_b: f64, u_trace: f64) -> bool {
    if u_b <= 0.0 {
        u_trace <= 0.0
    } else {
        u_trace == u_b || u_trace <= -u_b
    }
}

/// A wave fan emitted from one point: fronts plus the regions between them.
/// `regions.len() == fronts.len() + 1`.
pub(crate) struct WaveFan {
    pub fronts: Vec<(FrontGeometry, Option<StrengthLaw>)>,
    pub regions: Vec<RegionKind>,
}

/// Waves emitted from the corner `(0, 0)` by boundary data `b` against
/// interior data `i`. The rightmost region is always `Constant(i)`.
pub(crate) fn boundary_wave(b: State, i: State) -> WaveFan {
    let (ub, u0) = (b.u, i.u);
    if ub > 0.0 && u0 == ub {
        // contact: boundary density convects in at the common speed
        if b.rho == i.rho {
            return WaveFan {
                fronts: vec![],
                regions: vec![RegionKind::Constant(i)],
            };
        }
        return WaveFan {
            fronts: vec![(
                FrontGeometry::Line {
                    speed: u0,
                    intercept: 0.0,
                },
                None,
            )],
            regions: vec![
                RegionKind::Constant(State::new(u0, b.rho)),
                RegionKind::Constant(i),
            ],
        };
    }
    if u0 > 0.0 && ub > 0.0 && ub < u0 {
        // rarefaction between x = ub t and x = u0 t
        return WaveFan {
            fronts: vec![
                (
                    FrontGeometry::Line {
                        speed: ub,
                        intercept: 0.0,
                    },
                    None,
                ),
                (
                    FrontGeometry::Line {
                        speed: u0,
                        intercept: 0.0,
                    },
                    None,
                ),
            ],
            regions: vec![
                RegionKind::Constant(b),
                RegionKind::Fan { center_x: 0.0 },
                RegionKind::Constant(i),
            ],
        };
    }
    if u0 > 0.0 && ub <= 0.0 {
        // fan anchored on the corner; trace at 0+ is 0, admissible for ub <= 0
        return WaveFan {
            fronts: vec![(
                FrontGeometry::Line {
                    speed: u0,
                    intercept: 0.0,
                },
                None,
            )],
            regions: vec![RegionKind::Fan { center_x: 0.0 }, RegionKind::Constant(i)],
        };
    }
    if u0 < ub && u0 + ub > 0.0 {
        // delta shock entering the domain
        let s = shock_speed(ub, u0);
        let rate = strength_rate(s, b, i);
        return WaveFan {
            fronts: vec![(
                FrontGeometry::Line {
                    speed: s,
                    intercept: 0.0,
                },
                Some(StrengthLaw::new(rate, 0.0, 0.0)),
            )],
            regions: vec![RegionKind::Constant(b), RegionKind::Constant(i)],
        };
    }
    // inert boundary: u0 <= 0 with ub <= 0, the omitted sign patterns
    // (u0 < ub, u0 + ub <= 0) and u0 = ub = 0
    WaveFan {
        fronts: vec![],
        regions: vec![RegionKind::Constant(i)],
    }
}

/// Waves emitted from `(x0, 0)` by left state `l` against right state `r`.
/// The leftmost region is always `Constant(l)`.
pub(crate) fn interior_wave(l: State, r: State, x0: f64) -> WaveFan {
    if l.u == r.u {
        if l == r {
            return WaveFan {
                fronts: vec![],
                regions: vec![RegionKind::Constant(l)],
            };
        }
        return WaveFan {
            fronts: vec![(
                FrontGeometry::Line {
                    speed: l.u,
                    intercept: x0,
                },
                None,
            )],
            regions: vec![RegionKind::Constant(l), RegionKind::Constant(r)],
        };
    }
    if l.u < r.u {
        return WaveFan {
            fronts: vec![
                (
                    FrontGeometry::Line {
                        speed: l.u,
                        intercept: x0,
                    },
                    None,
                ),
                (
                    FrontGeometry::Line {
                        speed: r.u,
                        intercept: x0,
                    },
                    None,
                ),
            ],
            regions: vec![
                RegionKind::Constant(l),
                RegionKind::Fan { center_x: x0 },
                RegionKind::Constant(r),
            ],
        };
    }
    let s = shock_speed(l.u, r.u);
    let rate = strength_rate(s, l, r);
    WaveFan {
        fronts: vec![(
            FrontGeometry::Line {
                speed: s,
                intercept: x0,
            },
            Some(StrengthLaw::new(rate, 0.0, 0.0)),
        )],
        regions: vec![RegionKind::Constant(l), RegionKind::Constant(r)],
    }
}

/// First positive time at which `geometry` reaches `x = 0`, if any.
pub(crate) fn exit_time(geometry: &FrontGeometry) -> Option<f64> {
    match *geometry {
        FrontGeometry::Line { speed, intercept } => {
            if speed < 0.0 && intercept > 0.0 {
                Some(-intercept / speed)
            } else if intercept == 0.0 && speed <= 0.0 {
                // born on the boundary and never enters; treat as immediate exit
                Some(0.0)
            } else {
                None
            }
        }
        FrontGeometry::SqrtCurve {
            center_x,
            u_const,
            coeff,
        } => {
            // roots of u_const s^2 + coeff s + center_x in s = sqrt(t)
            crate::front_tracking::smallest_positive_root(u_const, coeff, center_x, 0.0)
                .map(|s| s * s)
        }
    }
}

/// Wrap a single wave fan into a one-slab solution over `[0, horizon]`,
/// clipping fronts that leave through `x = 0` and logging exiting atoms.
pub(crate) fn single_slab_from_fan(fan: WaveFan, horizon: f64) -> PiecewiseSolution {
    let mut fronts = Vec::new();
    let mut exits = Vec::new();
    for (geometry, atom) in fan.fronts {
        let mut t_end = horizon;
        if let Some(tx) = exit_time(&geometry) {
            if tx < horizon {
                t_end = tx;
                if let Some(law) = atom {
                    let mass = law.eval(tx);
                    if mass != 0.0 {
                        exits.push(ExitRecord { time: tx, mass });
                    }
                }
            }
        }
        fronts.push(FrontCurve {
            geometry,
            t_start: 0.0,
            t_end,
            atom,
        });
    }
    PiecewiseSolution::single_slab(horizon, fronts, fan.regions, exits)
}

/// Exact solution of the interior Riemann problem on `[0, horizon]`.
pub fn solve_interior_riemann(data: &InteriorRiemannData, horizon: f64) -> PiecewiseSolution {
    single_slab_from_fan(interior_wave(data.left, data.right, data.x0), horizon)
}

/// Exact solution of the boundary Riemann problem on `[0, horizon]`.
pub fn solve_boundary_riemann(data: &BoundaryRiemannData, horizon: f64) -> PiecewiseSolution {
    single_slab_from_fan(boundary_wave(data.boundary, data.interior), horizon)
}
