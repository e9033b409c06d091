//! Event-driven front tracking for the superposition of a boundary Riemann
//! solution at the corner and an interior Riemann solution at `(x0, 0)`.
//!
//! The engine is general: it starts from the two elementary wave fans,
//! finds the earliest pairwise interaction or boundary exit in closed form
//! (all meeting times reduce to quadratics in `sqrt(t)`), resolves it from
//! the jump conditions and the adjacent region traces, and emits one time
//! slab per inter-event interval. The printed interaction taxonomy is
//! recovered as a label, not as code paths.

use crate::rankine_hugoniot::{
    shock_into_fan_curve, shock_speed, strength_along_sqrt, strength_rate, FanSide,
};
use crate::riemann::{boundary_wave, interior_wave};
use crate::solution::{
    CaseLabel, ExitRecord, FrontCurve, FrontGeometry, PiecewiseSolution, RegionKind, State,
    StrengthLaw, TimeSlab,
};
use thiserror::Error;

/// Two-wave interaction problem data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemData {
    pub boundary: State,
    pub left: State,
    pub right: State,
    pub x0: f64,
    pub horizon: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum TrackError {
    #[error("x0 must be strictly positive; for x0 = 0 solve the boundary Riemann problem instead")]
    CoincidentCorner,
    #[error("horizon must be strictly positive and finite")]
    BadHorizon,
    #[error("data contain non-finite values")]
    NonfiniteData,
    #[error("unresolved wave configuration at t = {t}: {detail}")]
    UnresolvedConfiguration { t: f64, detail: String },
    #[error("event cap of {0} exceeded; configuration does not settle")]
    EventCap(usize),
}

const EVENT_CAP: usize = 64;

/// A live front during evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackedFront {
    pub geometry: FrontGeometry,
    pub atom: Option<StrengthLaw>,
}

impl TrackedFront {
    fn strength_at(&self, t: f64) -> f64 {
        self.atom.map_or(0.0, |law| law.eval(t))
    }
}

/// Snapshot of the wave structure between events.
/// `regions.len() == fronts.len() + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontSet {
    /// Prescribed boundary pair; consulted when the wall-adjacent state
    /// changes, since the weak boundary condition may then admit a new
    /// entering wave.
    pub boundary: State,
    pub fronts: Vec<TrackedFront>,
    pub regions: Vec<RegionKind>,
}

/// What happens next.
#[derive(Debug, Clone, PartialEq)]
pub enum EventKind {
    /// Adjacent fronts `left_front` and `left_front + 1` meet; both outer
    /// regions are constant states.
    FrontCollision { left_front: usize },
    /// Adjacent fronts meet and one outer region is the fan with the given
    /// region index: a shock enters or leaves a rarefaction.
    FanEdgeMerge { left_front: usize, fan_region: usize },
    /// The leftmost front reaches `x = 0`.
    BoundaryExit { front: usize },
    /// A wall-adjacent fan's trace rises through `-u_b`: the boundary datum
    /// becomes active again and emits a fresh delta shock tangentially from
    /// the wall. The printed taxonomy stops short of this late-time event,
    /// but without it the weak boundary condition fails once the fan trace
    /// leaves the admissible set.
    BoundaryActivation,
    /// Nothing else happens before the horizon.
    HorizonReached,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub time: f64,
    pub position: f64,
    pub kind: EventKind,
}

/// One line of the evolution log.
#[derive(Debug, Clone, PartialEq)]
pub struct EventRecord {
    pub time: f64,
    pub position: f64,
    pub kind: String,
    pub fronts_before: usize,
    pub fronts_after: usize,
    pub strength_before: f64,
    pub strength_after: f64,
}

/// Smallest root of `a s^2 + b s + c = 0` with `s > s_min`, if any.
///
/// Discriminants within `1e-14` of zero (relative to the coefficient scale)
/// are treated as exact double roots.
pub(crate) fn smallest_positive_root(a: f64, b: f64, c: f64, s_min: f64) -> Option<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs()).max(1e-300);
    if a.abs() <= 1e-14 * scale {
        if b.abs() <= 1e-14 * scale {
            return None; // constant separation
        }
        let s = -c / b;
        return (s > s_min).then_some(s);
    }
    let disc = b * b - 4.0 * a * c;
    let tol = 1e-14 * scale * scale;
    if disc < -tol {
        return None;
    }
    // discriminants inside the tolerance band are exact double roots
    // (tangencies); taking sqrt of their rounding noise would fabricate
    // spurious nearby crossings
    let sq = if disc.abs() <= tol { 0.0 } else { disc.sqrt() };
    // numerically stable pair
    let q = -0.5 * (b + b.signum() * sq);
    let (r1, r2) = if b == 0.0 {
        let r = (-c / a).max(0.0).sqrt();
        (-r, r)
    } else {
        (q / a, if q != 0.0 { c / q } else { f64::INFINITY })
    };
    let mut best = None;
    for r in [r1, r2] {
        if r.is_finite() && r > s_min && best.map_or(true, |b| r < b) {
            best = Some(r);
        }
    }
    best
}

/// Earliest strict-future meeting time of two fronts after `t_now`.
fn meeting_time(a: &FrontGeometry, b: &FrontGeometry, t_now: f64) -> Option<f64> {
    let (a2, a1, a0) = a.sqrt_poly();
    let (b2, b1, b0) = b.sqrt_poly();
    let s_min = (t_now.max(0.0)).sqrt() + 1e-9 * t_now.max(1e-6).sqrt();
    smallest_positive_root(b2 - a2, b1 - a1, b0 - a0, s_min).map(|s| s * s)
}

/// First time after `t_now` at which the front reaches `x = 0`.
fn boundary_exit_time(g: &FrontGeometry, t_now: f64) -> Option<f64> {
    let (a2, a1, a0) = g.sqrt_poly();
    let s_min = (t_now.max(0.0)).sqrt() + 1e-9 * t_now.max(1e-6).sqrt();
    smallest_positive_root(a2, a1, a0, s_min).map(|s| s * s)
}

/// Initial wave structure: boundary fan stitched to the interior fan through
/// the shared middle state.
pub fn initial_fronts(data: &ProblemData) -> FrontSet {
    let bw = boundary_wave(data.boundary, data.left);
    let iw = interior_wave(data.left, data.right, data.x0);
    let mut fronts: Vec<TrackedFront> = bw
        .fronts
        .into_iter()
        .map(|(geometry, atom)| TrackedFront { geometry, atom })
        .collect();
    let mut regions = bw.regions;
    fronts.extend(
        iw.fronts
            .into_iter()
            .map(|(geometry, atom)| TrackedFront { geometry, atom }),
    );
    regions.pop(); // shared middle state (u_L, rho_L)
    regions.extend(iw.regions);
    FrontSet {
        boundary: data.boundary,
        fronts,
        regions,
    }
}

/// Earliest pending event strictly after `t_now`.
pub fn next_event(set: &FrontSet, t_now: f64, horizon: f64) -> Event {
    let mut best = Event {
        time: horizon,
        position: f64::NAN,
        kind: EventKind::HorizonReached,
    };
    // a wall-adjacent fan activates the boundary when its trace -c/t
    // reaches -u_b (possible only for positive boundary velocity)
    if let RegionKind::Fan { center_x } = set.regions[0] {
        if set.boundary.u > 0.0 && center_x > 0.0 {
            let t_star = center_x / set.boundary.u;
            if t_star > t_now * (1.0 + 1e-14) + 1e-15 && t_star < best.time {
                best = Event {
                    time: t_star,
                    position: 0.0,
                    kind: EventKind::BoundaryActivation,
                };
            }
        }
    }
    if let Some(front) = set.fronts.first() {
        if let Some(t) = boundary_exit_time(&front.geometry, t_now) {
            if t < best.time {
                best = Event {
                    time: t,
                    position: 0.0,
                    kind: EventKind::BoundaryExit { front: 0 },
                };
            }
        }
    }
    for i in 0..set.fronts.len().saturating_sub(1) {
        if let Some(t) = meeting_time(&set.fronts[i].geometry, &set.fronts[i + 1].geometry, t_now)
        {
            if t < best.time {
                let x = set.fronts[i].geometry.position(t);
                let kind = if let RegionKind::Fan { .. } = set.regions[i] {
                    EventKind::FanEdgeMerge {
                        left_front: i,
                        fan_region: i,
                    }
                } else if let RegionKind::Fan { .. } = set.regions[i + 2] {
                    EventKind::FanEdgeMerge {
                        left_front: i,
                        fan_region: i + 2,
                    }
                } else {
                    EventKind::FrontCollision { left_front: i }
                };
                best = Event {
                    time: t,
                    position: x,
                    kind,
                };
            }
        }
    }
    best
}

/// Apply an event to a front set, producing the structure valid just after.
///
/// Returns the exited delta mass, if the event discharged one through `x=0`.
pub fn resolve_event(set: &FrontSet, event: &Event) -> Result<(FrontSet, Option<f64>), TrackError> {
    let mut out = set.clone();
    match event.kind {
        EventKind::HorizonReached => Ok((out, None)),
        EventKind::BoundaryExit { front } => {
            if front != 0 {
                return Err(TrackError::UnresolvedConfiguration {
                    t: event.time,
                    detail: format!("non-leftmost front {front} reached the boundary"),
                });
            }
            let mass = out.fronts[0].strength_at(event.time);
            out.fronts.remove(0);
            out.regions.remove(0);
            // the exposed wall state may put the boundary datum back in
            // play: a constant state with u_b > u_w and u_b + u_w > 0
            // admits an entering delta shock from the wall
            let b = out.boundary;
            if let RegionKind::Constant(w) = out.regions[0] {
                if b.u > w.u && b.u + w.u > 0.0 {
                    let speed = shock_speed(b.u, w.u);
                    let rate = strength_rate(speed, b, w);
                    out.fronts.insert(
                        0,
                        TrackedFront {
                            geometry: FrontGeometry::Line {
                                speed,
                                intercept: -speed * event.time,
                            },
                            atom: Some(StrengthLaw::linear_through(rate, event.time, 0.0)),
                        },
                    );
                    out.regions.insert(0, RegionKind::Constant(b));
                }
            }
            Ok((out, (mass != 0.0).then_some(mass)))
        }
        EventKind::BoundaryActivation => {
            let b = out.boundary;
            let RegionKind::Fan { center_x } = out.regions[0] else {
                return Err(TrackError::UnresolvedConfiguration {
                    t: event.time,
                    detail: "boundary activation without a wall-adjacent fan".into(),
                });
            };
            let t_star = event.time;
            let geometry = shock_into_fan_curve(center_x, b.u, t_star, 0.0).map_err(|e| {
                TrackError::UnresolvedConfiguration {
                    t: t_star,
                    detail: e.to_string(),
                }
            })?;
            let atom = strength_along_sqrt(&geometry, b, FanSide::Right, t_star, 0.0)
                .map_err(|e| TrackError::UnresolvedConfiguration {
                    t: t_star,
                    detail: e.to_string(),
                })?;
            out.fronts.insert(
                0,
                TrackedFront {
                    geometry,
                    atom: Some(atom),
                },
            );
            out.regions.insert(0, RegionKind::Constant(b));
            Ok((out, None))
        }
        EventKind::FrontCollision { left_front } | EventKind::FanEdgeMerge { left_front, .. } => {
            let i = left_front;
            if i + 1 >= out.fronts.len() {
                return Err(TrackError::UnresolvedConfiguration {
                    t: event.time,
                    detail: "collision index out of range".into(),
                });
            }
            let t1 = event.time;
            let x1 = event.position;
            let e0 = out.fronts[i].strength_at(t1) + out.fronts[i + 1].strength_at(t1);
            let had_atom = out.fronts[i].atom.is_some() || out.fronts[i + 1].atom.is_some();
            let left = out.regions[i];
            let right = out.regions[i + 2];
            let merged = match (left, right) {
                (RegionKind::Constant(a), RegionKind::Constant(b)) => {
                    let s = shock_speed(a.u, b.u);
                    let geometry = FrontGeometry::Line {
                        speed: s,
                        intercept: x1 - s * t1,
                    };
                    let atom = had_atom.then(|| {
                        StrengthLaw::linear_through(strength_rate(s, a, b), t1, e0)
                    });
                    TrackedFront { geometry, atom }
                }
                (RegionKind::Fan { center_x }, RegionKind::Constant(b)) => {
                    let geometry = shock_into_fan_curve(center_x, b.u, t1, x1).map_err(|e| {
                        TrackError::UnresolvedConfiguration {
                            t: t1,
                            detail: e.to_string(),
                        }
                    })?;
                    let atom = if had_atom {
                        Some(
                            strength_along_sqrt(&geometry, b, FanSide::Left, t1, e0).map_err(
                                |e| TrackError::UnresolvedConfiguration {
                                    t: t1,
                                    detail: e.to_string(),
                                },
                            )?,
                        )
                    } else {
                        None
                    };
                    TrackedFront { geometry, atom }
                }
                (RegionKind::Constant(a), RegionKind::Fan { center_x }) => {
                    let geometry = shock_into_fan_curve(center_x, a.u, t1, x1).map_err(|e| {
                        TrackError::UnresolvedConfiguration {
                            t: t1,
                            detail: e.to_string(),
                        }
                    })?;
                    let atom = if had_atom {
                        Some(
                            strength_along_sqrt(&geometry, a, FanSide::Right, t1, e0).map_err(
                                |e| TrackError::UnresolvedConfiguration {
                                    t: t1,
                                    detail: e.to_string(),
                                },
                            )?,
                        )
                    } else {
                        None
                    };
                    TrackedFront { geometry, atom }
                }
                (RegionKind::Fan { .. }, RegionKind::Fan { .. }) => {
                    return Err(TrackError::UnresolvedConfiguration {
                        t: t1,
                        detail: "two rarefaction fans in direct contact".into(),
                    });
                }
            };
            out.fronts.splice(i..=i + 1, [merged]);
            out.regions.remove(i + 1);
            Ok((out, None))
        }
    }
}

/// Printed-taxonomy label for the data. Total over all sign patterns; exact
/// ties on case boundaries resolve toward the degenerate wave.
pub fn classify_case(data: &ProblemData) -> CaseLabel {
    let (ub, ul, ur) = (data.boundary.u, data.left.u, data.right.u);
    let label = |case, subcase| CaseLabel { case, subcase };
    if ul == ub {
        if ul > 0.0 {
            // case 1: common positive speed at the corner
            return if ur == ul {
                label(1, 1)
            } else if ur > ul {
                label(1, 2)
            } else {
                label(1, 3)
            };
        }
        // case 2: inert boundary (covers the u = 0 tie)
        return if ur == ul {
            label(2, 1)
        } else if ur > ul {
            label(2, 2)
        } else {
            label(2, 3)
        };
    }
    if ul == ur {
        return if ul < ub && ul + ub > 0.0 {
            label(3, 1)
        } else if ub > 0.0 && ub < ul {
            label(3, 2)
        } else if ub <= 0.0 && ul > 0.0 {
            label(3, 3)
        } else {
            label(3, 4)
        };
    }
    if ur == ub {
        if ur > 0.0 {
            return if ur < ul {
                label(4, 1)
            } else if ul + ub > 0.0 {
                label(4, 2)
            } else {
                label(4, 3)
            };
        }
        // u_R = u_b <= 0
        return if ur < ul { label(5, 1) } else { label(5, 2) };
    }
    // case 6: all three velocities distinct
    let sub = if ul < ub {
        if ul < ur {
            if ul + ub > 0.0 {
                if ub > ur {
                    1
                } else {
                    9
                }
            } else if ub > ur {
                2
            } else {
                5
            }
        } else if ul + ub > 0.0 {
            10
        } else {
            11
        }
    } else {
        // ub < ul
        if ul < ur {
            if ub > 0.0 {
                3
            } else if ul > 0.0 {
                4
            } else {
                5
            }
        } else if ub > 0.0 {
            if ub < ur {
                8
            } else {
                12
            }
        } else if ul > 0.0 {
            if ub < ur {
                7
            } else {
                13
            }
        } else if ub < ur {
            6
        } else {
            11
        }
    };
    label(6, sub)
}

/// Evolve the two-wave problem through all interactions up to the horizon.
pub fn evolve(data: &ProblemData) -> Result<PiecewiseSolution, TrackError> {
    evolve_logged(data).map(|(sol, _)| sol)
}

/// [`evolve`] plus the event log.
pub fn evolve_logged(
    data: &ProblemData,
) -> Result<(PiecewiseSolution, Vec<EventRecord>), TrackError> {
    if !(data.x0 > 0.0) {
        return Err(TrackError::CoincidentCorner);
    }
    if !(data.horizon > 0.0) || !data.horizon.is_finite() {
        return Err(TrackError::BadHorizon);
    }
    if !(data.boundary.is_finite() && data.left.is_finite() && data.right.is_finite())
        || !data.x0.is_finite()
    {
        return Err(TrackError::NonfiniteData);
    }

    let mut set = initial_fronts(data);
    let mut slabs = Vec::new();
    let mut exits = Vec::new();
    let mut log = Vec::new();
    let mut t_now = 0.0f64;
    let mut n_events = 0usize;

    loop {
        let event = next_event(&set, t_now, data.horizon);
        let t_ev = event.time.min(data.horizon);
        if t_ev > t_now + 1e-12 {
            slabs.push(TimeSlab {
                t_lo: t_now,
                t_hi: t_ev,
                fronts: set
                    .fronts
                    .iter()
                    .map(|f| FrontCurve {
                        geometry: f.geometry,
                        t_start: t_now,
                        t_end: t_ev,
                        atom: f.atom,
                    })
                    .collect(),
                regions: set.regions.clone(),
            });
        }
        if matches!(event.kind, EventKind::HorizonReached) || event.time >= data.horizon {
            break;
        }
        let strength_before: f64 = set.fronts.iter().map(|f| f.strength_at(event.time)).sum();
        let (next_set, exited) = resolve_event(&set, &event)?;
        if let Some(mass) = exited {
            exits.push(ExitRecord {
                time: event.time,
                mass,
            });
        }
        let strength_after: f64 =
            next_set.fronts.iter().map(|f| f.strength_at(event.time)).sum();
        log.push(EventRecord {
            time: event.time,
            position: event.position,
            kind: match event.kind {
                EventKind::FrontCollision { .. } => "collision".into(),
                EventKind::FanEdgeMerge { .. } => "fan-edge-merge".into(),
                EventKind::BoundaryExit { .. } => "boundary-exit".into(),
                EventKind::BoundaryActivation => "boundary-activation".into(),
                EventKind::HorizonReached => "horizon".into(),
            },
            fronts_before: set.fronts.len(),
            fronts_after: next_set.fronts.len(),
            strength_before,
            strength_after,
        });
        set = next_set;
        t_now = event.time;
        n_events += 1;
        if n_events > EVENT_CAP {
            return Err(TrackError::EventCap(EVENT_CAP));
        }
    }

    let sol = PiecewiseSolution {
        horizon: data.horizon,
        slabs,
        exits,
        case: Some(classify_case(data)),
    };
    Ok((sol, log))
}
