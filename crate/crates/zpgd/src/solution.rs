//! Piecewise representation of exact solutions in the quarter plane.
//!
//! A solution is a stack of time slabs.  Inside a slab the wave structure is
//! frozen: an ordered list of front curves (straight lines or square-root
//! curves, optionally carrying a delta atom in the density) separates
//! regions that are either constant states or centered rarefaction fans.
//! Slab boundaries are event times -- front collisions and boundary exits --
//! so fronts never cross inside a slab.
//!
//! All geometry is stored analytically; evaluation and validation reduce to
//! closed-form arithmetic, which is what makes 1e-12-level jump-condition
//! checks possible.

use thiserror::Error;

/// Absolute tolerance for "x sits on a front" coincidence queries.
pub const COINCIDE_TOL: f64 = 1e-12;

/// Constant state on one side of a wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    /// Velocity.
    pub u: f64,
    /// Density.
    pub rho: f64,
}

impl State {
    pub const fn new(u: f64, rho: f64) -> Self {
        State { u, rho }
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.rho.is_finite()
    }
}

/// What fills the space between two adjacent fronts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionKind {
    /// Constant state `(u, rho)`.
    Constant(State),
    /// Centered rarefaction fan: `u(x,t) = (x - center_x)/t`, `rho = 0`.
    Fan { center_x: f64 },
}

impl RegionKind {
    /// Pointwise `(u, rho)` of the region at `(x, t)`.
    pub fn sample(&self, x: f64, t: f64) -> (f64, f64) {
        match *self {
            RegionKind::Constant(s) => (s.u, s.rho),
            RegionKind::Fan { center_x } => ((x - center_x) / t, 0.0),
        }
    }

    /// Side trace seen by a front passing through `(x, t)`.
    pub fn trace(&self, x: f64, t: f64) -> State {
        let (u, rho) = self.sample(x, t);
        State::new(u, rho)
    }
}

/// Analytic geometry of a wave boundary in the `(x, t)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrontGeometry {
    /// `x(t) = speed * t + intercept`.
    Line { speed: f64, intercept: f64 },
    /// `x(t) = center_x + u_const * t + coeff * sqrt(t)`: the exact path of a
    /// shock traversing a fan centered at `center_x` against a constant state
    /// with velocity `u_const`.
    SqrtCurve {
        center_x: f64,
        u_const: f64,
        coeff: f64,
    },
}

impl FrontGeometry {
    pub fn position(&self, t: f64) -> f64 {
        match *self {
            FrontGeometry::Line { speed, intercept } => speed * t + intercept,
            FrontGeometry::SqrtCurve {
                center_x,
                u_const,
                coeff,
            } => center_x + u_const * t + coeff * t.sqrt(),
        }
    }

    pub fn speed(&self, t: f64) -> f64 {
        match *self {
            FrontGeometry::Line { speed, .. } => speed,
            FrontGeometry::SqrtCurve { u_const, coeff, .. } => {
                u_const + 0.5 * coeff / t.sqrt()
            }
        }
    }

    /// Coefficients of `x(tau^2)` as a quadratic in `tau = sqrt(t)`:
    /// returns `(a, b, c)` with `x = a*tau^2 + b*tau + c`.
    pub fn sqrt_poly(&self) -> (f64, f64, f64) {
        match *self {
            FrontGeometry::Line { speed, intercept } => (speed, 0.0, intercept),
            FrontGeometry::SqrtCurve {
                center_x,
                u_const,
                coeff,
            } => (u_const, coeff, center_x),
        }
    }
}

/// Delta-atom strength law `e(t) = alpha*t + beta*sqrt(t) + gamma`.
///
/// Straight shocks carry `beta = 0`; square-root curves carry `alpha = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrengthLaw {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl StrengthLaw {
    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        StrengthLaw { alpha, beta, gamma }
    }

    /// Linear-in-t law through `(t0, e0)` with slope `rate`.
    pub fn linear_through(rate: f64, t0: f64, e0: f64) -> Self {
        StrengthLaw::new(rate, 0.0, e0 - rate * t0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.alpha * t + self.beta * t.sqrt() + self.gamma
    }

    /// `e'(t)`.
    pub fn rate(&self, t: f64) -> f64 {
        self.alpha + 0.5 * self.beta / t.sqrt()
    }

    /// Minimum of `e` over `[t0, t1]` (closed form: quadratic in sqrt(t)).
    pub fn min_on(&self, t0: f64, t1: f64) -> f64 {
        let mut m = self.eval(t0).min(self.eval(t1));
        // stationary point of alpha*s^2 + beta*s + gamma in s = sqrt(t)
        if self.alpha != 0.0 {
            let s_star = -self.beta / (2.0 * self.alpha);
            if s_star > 0.0 {
                let t_star = s_star * s_star;
                if t_star > t0 && t_star < t1 {
                    m = m.min(self.eval(t_star));
                }
            }
        }
        m
    }

    /// True when the law is identically zero (degenerate atom from
    /// zero-density data; kept so case classification stays faithful).
    pub fn is_degenerate(&self) -> bool {
        self.alpha == 0.0 && self.beta == 0.0 && self.gamma == 0.0
    }
}

/// A front curve inside one time slab, live on `[t_start, t_end]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontCurve {
    pub geometry: FrontGeometry,
    pub t_start: f64,
    pub t_end: f64,
    /// Delta atom carried by the front, if any.
    pub atom: Option<StrengthLaw>,
}

impl FrontCurve {
    pub fn active_at(&self, t: f64) -> bool {
        t >= self.t_start - COINCIDE_TOL && t <= self.t_end + COINCIDE_TOL
    }

    pub fn strength_at(&self, t: f64) -> f64 {
        self.atom.map_or(0.0, |law| law.eval(t))
    }
}

/// Horizontal slab `t in [t_lo, t_hi]` of frozen wave structure.
///
/// `regions.len() == fronts.len() + 1`; region `i` sits left of front `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSlab {
    pub t_lo: f64,
    pub t_hi: f64,
    pub fronts: Vec<FrontCurve>,
    pub regions: Vec<RegionKind>,
}

/// Delta mass that left the domain through `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExitRecord {
    pub time: f64,
    pub mass: f64,
}

/// Wave-interaction taxonomy label `(case, subcase)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseLabel {
    pub case: u8,
    pub subcase: u8,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "case {} subcase {}", self.case, self.subcase)
    }
}

/// Time-slab decomposition of the quarter plane up to `horizon`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseSolution {
    pub horizon: f64,
    pub slabs: Vec<TimeSlab>,
    /// Delta mass logged when an atom-carrying front reaches `x = 0`.
    pub exits: Vec<ExitRecord>,
    pub case: Option<CaseLabel>,
}

/// Pointwise sample: velocity, regular density, and nearby atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSample {
    pub u: f64,
    pub rho_regular: f64,
    /// `(position, strength)` for atoms within the query window.
    pub atoms: Vec<(f64, f64)>,
}

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("t = {t} is beyond the solution horizon {horizon}")]
    OutOfHorizon { t: f64, horizon: f64 },
    #[error("t = {t} is not strictly positive; initial data live on the scenario, not the solution")]
    NonpositiveTime { t: f64 },
}

/// Structural defect found by [`PiecewiseSolution::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    SlabGap { index: usize, gap: f64 },
    BadSlabTimes { slab: usize },
    RegionCountMismatch { slab: usize, fronts: usize, regions: usize },
    BadFrontWindow { slab: usize, front: usize },
    FrontsCross { slab: usize, front: usize, t: f64 },
    NonpositivePosition { slab: usize, front: usize, t: f64 },
    NegativeStrength { slab: usize, front: usize, min: f64 },
    SpuriousFront { slab: usize, front: usize },
    RankineHugoniotDefect { slab: usize, front: usize, defect: f64 },
    DiscontinuousFront { junction: usize, front: usize, jump: f64 },
    StrengthJump { junction: usize, position: f64, jump: f64 },
    NonfiniteValue { slab: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl PiecewiseSolution {
    /// Single-slab constructor used by the Riemann solvers.
    pub fn single_slab(
        horizon: f64,
        fronts: Vec<FrontCurve>,
        regions: Vec<RegionKind>,
        exits: Vec<ExitRecord>,
    ) -> Self {
        PiecewiseSolution {
            horizon,
            slabs: vec![TimeSlab {
                t_lo: 0.0,
                t_hi: horizon,
                fronts,
                regions,
            }],
            exits,
            case: None,
        }
    }

    fn slab_at(&self, t: f64) -> Option<&TimeSlab> {
        self.slabs
            .iter()
            .find(|s| t >= s.t_lo - COINCIDE_TOL && t <= s.t_hi + COINCIDE_TOL)
    }

    /// Pointwise evaluation at `(x, t)`, `x > 0`, `0 < t <= horizon`.
    ///
    /// Off fronts this returns the region sample with an empty atom list; if
    /// `x` lands on a front within [`COINCIDE_TOL`] the sample carries the
    /// front speed as velocity, the mean of the side densities, and the
    /// front's atom if present.
    pub fn evaluate(&self, x: f64, t: f64) -> Result<SolutionSample, EvalError> {
        if !(t > 0.0) {
            return Err(EvalError::NonpositiveTime { t });
        }
        if t > self.horizon + COINCIDE_TOL {
            return Err(EvalError::OutOfHorizon {
                t,
                horizon: self.horizon,
            });
        }
        let slab = self.slab_at(t).expect("slabs partition [0, horizon]");
        let mut left_region = 0usize;
        for (i, front) in slab.fronts.iter().enumerate() {
            if !front.active_at(t) {
                // expired front: its left region has pinched out
                left_region = i + 1;
                continue;
            }
            let pos = front.geometry.position(t);
            if x < pos - COINCIDE_TOL {
                let (u, rho) = slab.regions[left_region].sample(x, t);
                return Ok(SolutionSample {
                    u,
                    rho_regular: rho,
                    atoms: Vec::new(),
                });
            }
            if (x - pos).abs() <= COINCIDE_TOL {
                let rho_l = slab.regions[left_region].sample(pos, t).1;
                let rho_r = slab.regions[i + 1].sample(pos, t).1;
                let atoms = match front.atom {
                    Some(law) => vec![(pos, law.eval(t))],
                    None => Vec::new(),
                };
                return Ok(SolutionSample {
                    u: front.geometry.speed(t),
                    rho_regular: 0.5 * (rho_l + rho_r),
                    atoms,
                });
            }
            left_region = i + 1;
        }
        let (u, rho) = slab.regions[left_region].sample(x, t);
        Ok(SolutionSample {
            u,
            rho_regular: rho,
            atoms: Vec::new(),
        })
    }

    /// All live atoms at time `t`, as `(position, strength)` with strictly
    /// increasing positions.
    pub fn atoms_at(&self, t: f64) -> Result<Vec<(f64, f64)>, EvalError> {
        if !(t > 0.0) {
            return Err(EvalError::NonpositiveTime { t });
        }
        if t > self.horizon + COINCIDE_TOL {
            return Err(EvalError::OutOfHorizon {
                t,
                horizon: self.horizon,
            });
        }
        let slab = self.slab_at(t).expect("slabs partition [0, horizon]");
        Ok(slab
            .fronts
            .iter()
            .filter(|f| f.active_at(t))
            .filter_map(|f| f.atom.map(|law| (f.geometry.position(t), law.eval(t))))
            .collect())
    }

    /// Trace `(u, rho)` of the solution as `x -> 0+` at time `t`.
    pub fn boundary_trace(&self, t: f64) -> Result<(f64, f64), EvalError> {
        if !(t > 0.0) {
            return Err(EvalError::NonpositiveTime { t });
        }
        if t > self.horizon + COINCIDE_TOL {
            return Err(EvalError::OutOfHorizon {
                t,
                horizon: self.horizon,
            });
        }
        let slab = self.slab_at(t).expect("slabs partition [0, horizon]");
        let mut region = 0usize;
        for (i, front) in slab.fronts.iter().enumerate() {
            if !front.active_at(t) || front.geometry.position(t) <= COINCIDE_TOL {
                region = i + 1;
            } else {
                break;
            }
        }
        Ok(match slab.regions[region] {
            RegionKind::Constant(s) => (s.u, s.rho),
            RegionKind::Fan { center_x } => (-center_x / t, 0.0),
        })
    }

    /// Positions of fronts with identically zero strength laws, kept for
    /// faithful case classification with zero-density data.
    pub fn degenerate_atoms(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (si, slab) in self.slabs.iter().enumerate() {
            for (fi, front) in slab.fronts.iter().enumerate() {
                if front.atom.map_or(false, |a| a.is_degenerate()) {
                    out.push((si, fi));
                }
            }
        }
        out
    }

    /// Structural validation: returns every violated representation rule.
    ///
    /// Rankine-Hugoniot consistency is checked analytically at sampled times
    /// along each front against the adjacent region traces.
    pub fn validate(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        let mut t_prev = 0.0f64;
        for (si, slab) in self.slabs.iter().enumerate() {
            if (slab.t_lo - t_prev).abs() > 1e-12 {
                v.push(Violation::SlabGap {
                    index: si,
                    gap: slab.t_lo - t_prev,
                });
            }
            t_prev = slab.t_hi;
            if !(slab.t_lo < slab.t_hi) {
                v.push(Violation::BadSlabTimes { slab: si });
                continue;
            }
            if slab.regions.len() != slab.fronts.len() + 1 {
                v.push(Violation::RegionCountMismatch {
                    slab: si,
                    fronts: slab.fronts.len(),
                    regions: slab.regions.len(),
                });
                continue;
            }
            if !slab.regions.iter().all(|r| match r {
                RegionKind::Constant(s) => s.is_finite(),
                RegionKind::Fan { center_x } => center_x.is_finite() && *center_x >= 0.0,
            }) {
                v.push(Violation::NonfiniteValue { slab: si });
            }
            for (fi, front) in slab.fronts.iter().enumerate() {
                self.check_front(si, fi, slab, front, &mut v);
            }
            self.check_ordering(si, slab, &mut v);
        }
        if (t_prev - self.horizon).abs() > 1e-12 {
            v.push(Violation::SlabGap {
                index: self.slabs.len(),
                gap: self.horizon - t_prev,
            });
        }
        self.check_junctions(&mut v);
        v
    }

    fn check_front(
        &self,
        si: usize,
        fi: usize,
        slab: &TimeSlab,
        front: &FrontCurve,
        v: &mut Vec<Violation>,
    ) {
        if front.t_start < slab.t_lo - 1e-12
            || front.t_end > slab.t_hi + 1e-12
            || !(front.t_start < front.t_end)
        {
            v.push(Violation::BadFrontWindow { slab: si, front: fi });
            return;
        }
        // positivity of position on the open window
        let samples = window_samples(front.t_start, front.t_end, 9);
        for &t in &samples {
            if front.geometry.position(t) < -1e-12 {
                v.push(Violation::NonpositivePosition {
                    slab: si,
                    front: fi,
                    t,
                });
                break;
            }
        }
        if let FrontGeometry::SqrtCurve {
            center_x,
            u_const,
            coeff,
        } = front.geometry
        {
            // interior minimum at sqrt(t*) = -coeff/(2 u_const)
            if u_const != 0.0 {
                let s = -coeff / (2.0 * u_const);
                if s > 0.0 {
                    let ts = s * s;
                    if ts > front.t_start && ts < front.t_end {
                        let xm = center_x + u_const * ts + coeff * s;
                        if xm < -1e-12 {
                            v.push(Violation::NonpositivePosition {
                                slab: si,
                                front: fi,
                                t: ts,
                            });
                        }
                    }
                }
            }
        }
        if let Some(law) = front.atom {
            let m = law.min_on(front.t_start, front.t_end);
            if m < -1e-12 {
                v.push(Violation::NegativeStrength {
                    slab: si,
                    front: fi,
                    min: m,
                });
            }
        }
        if front.atom.is_none()
            && slab.regions[fi] == slab.regions[fi + 1]
        {
            v.push(Violation::SpuriousFront { slab: si, front: fi });
        }
        // Rankine-Hugoniot along the front against the side traces
        let mut worst = 0.0f64;
        for &t in &window_samples(front.t_start, front.t_end, 33) {
            let x = front.geometry.position(t);
            if x <= 0.0 {
                continue;
            }
            let l = slab.regions[fi].trace(x, t);
            let r = slab.regions[fi + 1].trace(x, t);
            let s_def = front.geometry.speed(t) - 0.5 * (l.u + r.u);
            let e_rate = front.atom.map_or(0.0, |law| law.rate(t));
            let accretion = l.rho * (l.u - front.geometry.speed(t))
                + r.rho * (front.geometry.speed(t) - r.u);
            worst = worst.max(s_def.abs()).max((e_rate - accretion).abs());
        }
        if worst > 1e-10 {
            v.push(Violation::RankineHugoniotDefect {
                slab: si,
                front: fi,
                defect: worst,
            });
        }
    }

    fn check_ordering(&self, si: usize, slab: &TimeSlab, v: &mut Vec<Violation>) {
        for fi in 0..slab.fronts.len().saturating_sub(1) {
            let a = &slab.fronts[fi];
            let b = &slab.fronts[fi + 1];
            let lo = a.t_start.max(b.t_start);
            let hi = a.t_end.min(b.t_end);
            if !(lo < hi) {
                continue;
            }
            for &t in &window_samples(lo, hi, 9) {
                if b.geometry.position(t) - a.geometry.position(t) < -1e-12 {
                    v.push(Violation::FrontsCross {
                        slab: si,
                        front: fi,
                        t,
                    });
                    break;
                }
            }
        }
    }

    fn check_junctions(&self, v: &mut Vec<Violation>) {
        for j in 1..self.slabs.len() {
            let prev = &self.slabs[j - 1];
            let next = &self.slabs[j];
            let t = next.t_lo;
            for (fi, front) in next.fronts.iter().enumerate() {
                let x = front.geometry.position(t);
                if x <= 1e-9 {
                    // born on the wall (boundary re-activation) or expiring
                    // there; mass accounting for these goes through the
                    // exit log and the boundary flux
                    continue;
                }
                let matched: Vec<&FrontCurve> = prev
                    .fronts
                    .iter()
                    .filter(|p| (p.geometry.position(t) - x).abs() <= 1e-9)
                    .collect();
                if matched.is_empty() {
                    v.push(Violation::DiscontinuousFront {
                        junction: j,
                        front: fi,
                        jump: f64::NAN,
                    });
                    continue;
                }
                let e_before: f64 = matched.iter().map(|p| p.strength_at(t)).sum();
                let e_after = front.strength_at(t);
                if (e_after - e_before).abs() > 1e-10 {
                    v.push(Violation::StrengthJump {
                        junction: j,
                        position: x,
                        jump: e_after - e_before,
                    });
                }
            }
        }
    }
}

/// `n` sample times strictly inside `[t0, t1]`, plus both endpoints nudged
/// inward so square-root curves are never probed at `t = 0`.
pub(crate) fn window_samples(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    let span = t1 - t0;
    let eps = 1e-9 * span.max(1e-9);
    (0..n)
        .map(|k| {
            let f = (k as f64 + 0.5) / n as f64;
            (t0 + f * span).clamp(t0 + eps, t1 - eps)
        })
        .collect()
}
