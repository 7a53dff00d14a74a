//! Guarded fixed-step integration of the scalar tangent-component equation.
//!
//! With `w = ⟨t, e₃⟩` and `v = w'`, the second-order equation
//! `(w'/κ)' = -κ w + τ √(1 - w² - (w'/κ)²)` becomes the first-order system
//!
//! ```text
//! w' = v
//! v' = (κ'/κ) v - κ² w ± τ √(κ² (1 - w²) - v²)
//! ```
//!
//! The square root is real only on the open ellipse `w² + (v/κ)² < 1`.
//! [`solve_w`] advances the system with classical RK4 on a uniform grid and
//! halts with a [`Termination::DomainExit`] before any state (including RK4
//! stage evaluations) drops below the radicand guard, so no NaN is ever
//! produced. The exit location is refined by bisection to a hundredth of the
//! step.
//!
//! The `+` sign branch corresponds to charts with `⟨b, e₃⟩ > 0` and is the
//! default; the mirrored branch is available through
//! [`TorsionSign::Negative`].

use alloc::vec::Vec;

use crate::error::Error;
use crate::grid::anchored_grid;
#[cfg(not(feature = "std"))]
use crate::math::FloatExt;
use crate::profile::IntrinsicProfile;
use crate::Result;

/// Default integration step.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Default lower bound kept between the radicand and zero.
pub const DEFAULT_GUARD: f64 = 1e-10;

/// State of the scalar system at one arc-length sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WState {
    pub s: f64,
    /// `⟨t, e₃⟩`, dimensionless.
    pub w: f64,
    /// `w'`, units 1/length.
    pub v: f64,
}

/// Sign branch of the `±τ√(...)` term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TorsionSign {
    /// Chart orientation with `⟨b, e₃⟩ > 0`.
    #[default]
    Positive,
    /// Mirrored chart orientation with `⟨b, e₃⟩ < 0`.
    Negative,
}

impl TorsionSign {
    pub fn value(self) -> f64 {
        match self {
            TorsionSign::Positive => 1.0,
            TorsionSign::Negative => -1.0,
        }
    }
}

/// Travel direction of the integration relative to `s0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    #[default]
    Forward,
    Backward,
    Both,
}

/// How one side of an integration ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    /// The integration reached the domain endpoint.
    ReachedEnd,
    /// The trajectory met the admissible-ellipse boundary; `s_exit` is the
    /// bisection-refined exit location and `radicand` the radicand of the
    /// last admissible state there.
    DomainExit { s_exit: f64, radicand: f64 },
}

impl Termination {
    pub fn is_exit(&self) -> bool {
        matches!(self, Termination::DomainExit { .. })
    }
}

/// Options for [`solve_w`].
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Grid step `h`.
    pub step: f64,
    /// Radicand guard `ε_d`; states below it terminate the chart.
    pub guard: f64,
    pub direction: Direction,
    pub sign: TorsionSign,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            step: DEFAULT_STEP,
            guard: DEFAULT_GUARD,
            direction: Direction::Forward,
            sign: TorsionSign::Positive,
        }
    }
}

/// Grid samples of the scalar solution plus termination records.
///
/// The grid is strictly increasing with constant step (the first and last
/// steps may be short where they meet the domain ends), and every retained
/// state satisfies the radicand guard.
#[derive(Debug, Clone)]
pub struct WSolution {
    pub states: Vec<WState>,
    /// Nominal grid step.
    pub step: f64,
    /// Index of the initial condition `s0` in `states`.
    pub origin: usize,
    /// Sign branch the solution was integrated with.
    pub sign: TorsionSign,
    /// Termination of the forward sweep (`None` if none was requested).
    pub forward: Option<Termination>,
    /// Termination of the backward sweep (`None` if none was requested).
    pub backward: Option<Termination>,
}

impl WSolution {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn grid(&self) -> Vec<f64> {
        self.states.iter().map(|st| st.s).collect()
    }

    /// True when every requested sweep reached its domain endpoint.
    pub fn reached_end(&self) -> bool {
        self.forward.iter().all(|t| !t.is_exit()) && self.backward.iter().all(|t| !t.is_exit())
    }

    /// First domain exit, if any sweep had one.
    pub fn domain_exit(&self) -> Option<Termination> {
        self.forward
            .filter(Termination::is_exit)
            .or(self.backward.filter(Termination::is_exit))
    }
}

pub(crate) fn radicand_value(w: f64, v: f64, kappa: f64) -> f64 {
    let q = v / kappa;
    1.0 - w * w - q * q
}

/// The quantity under the square root, `1 - w² - (v/κ(s))²`.
///
/// May be negative for inadmissible states; the only failure mode is a
/// profile evaluation error at `state.s`.
pub fn radicand(state: &WState, profile: &IntrinsicProfile) -> Result<f64> {
    Ok(radicand_value(state.w, state.v, profile.kappa(state.s)?))
}

enum RhsEval {
    Value { dw: f64, dv: f64 },
    /// Radicand below the requested floor.
    Below { radicand: f64 },
}

fn rhs_eval(
    profile: &IntrinsicProfile,
    sign: f64,
    s: f64,
    w: f64,
    v: f64,
    floor: f64,
) -> Result<RhsEval> {
    let kappa = profile.kappa(s)?;
    let rad = radicand_value(w, v, kappa);
    if rad < floor {
        return Ok(RhsEval::Below { radicand: rad });
    }
    let kappa_prime = profile.kappa_prime(s)?;
    let tau = profile.tau(s)?;
    // κ√rad = √(κ²(1-w²) - v²) since κ > 0
    let dv = (kappa_prime / kappa) * v - kappa * kappa * w + sign * tau * kappa * rad.sqrt();
    Ok(RhsEval::Value { dw: v, dv })
}

/// Vector field of the first-order system at `(s, w, v)`.
///
/// Fails with [`Error::NegativeRadicand`] when `κ²(1-w²) - v² < 0`.
pub fn w_rhs(
    s: f64,
    w: f64,
    v: f64,
    profile: &IntrinsicProfile,
    sign: TorsionSign,
) -> Result<(f64, f64)> {
    match rhs_eval(profile, sign.value(), s, w, v, 0.0)? {
        RhsEval::Value { dw, dv } => Ok((dw, dv)),
        RhsEval::Below { radicand } => Err(Error::NegativeRadicand { s, radicand }),
    }
}

/// One guarded RK4 step from `from` to arc length `target`.
///
/// Returns `None` if any stage evaluation or the resulting state violates
/// the radicand guard.
fn try_step_to(
    profile: &IntrinsicProfile,
    sign: f64,
    guard: f64,
    from: &WState,
    target: f64,
) -> Result<Option<WState>> {
    let delta = target - from.s;
    let half = 0.5 * delta;
    let mid = from.s + half;

    macro_rules! stage {
        ($s:expr, $w:expr, $v:expr) => {
            match rhs_eval(profile, sign, $s, $w, $v, guard)? {
                RhsEval::Value { dw, dv } => (dw, dv),
                RhsEval::Below { .. } => return Ok(None),
            }
        };
    }

    let (k1w, k1v) = stage!(from.s, from.w, from.v);
    let (k2w, k2v) = stage!(mid, from.w + half * k1w, from.v + half * k1v);
    let (k3w, k3v) = stage!(mid, from.w + half * k2w, from.v + half * k2v);
    let (k4w, k4v) = stage!(target, from.w + delta * k3w, from.v + delta * k3v);

    let w = from.w + delta / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    let v = from.v + delta / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if radicand_value(w, v, profile.kappa(target)?) < guard {
        return Ok(None);
    }
    Ok(Some(WState { s: target, w, v }))
}

/// Bisection refinement of the exit location after a failed step of width
/// `delta` (signed). Returns the furthest admissible state, located within
/// `step/100` of the true boundary crossing of the discrete trajectory.
fn refine_exit(
    profile: &IntrinsicProfile,
    sign: f64,
    guard: f64,
    step: f64,
    from: &WState,
    delta: f64,
) -> Result<WState> {
    let mut lo = 0.0;
    let mut hi = delta;
    let mut best = *from;
    while (hi - lo).abs() > step / 100.0 {
        let mid = 0.5 * (lo + hi);
        match try_step_to(profile, sign, guard, from, from.s + mid)? {
            Some(state) => {
                lo = mid;
                best = state;
            }
            None => hi = mid,
        }
    }
    Ok(best)
}

/// Integrates the scalar initial value problem from `(s0, w0, v0)` across
/// the profile domain.
///
/// The initial state must lie strictly inside the admissible ellipse (its
/// radicand must clear the guard). Integration proceeds grid point to grid
/// point and stops per sweep either at the domain endpoint or at the last
/// admissible grid point, with the exit location refined by bisection.
pub fn solve_w(
    profile: &IntrinsicProfile,
    s0: f64,
    w0: f64,
    v0: f64,
    opts: &SolveOptions,
) -> Result<WSolution> {
    if !(opts.step.is_finite() && opts.step > 0.0) {
        return Err(Error::InvalidParameter("step must be positive and finite"));
    }
    if !(opts.guard.is_finite() && opts.guard > 0.0) {
        return Err(Error::InvalidParameter("guard must be positive and finite"));
    }
    let domain = profile.domain();
    if !domain.contains(s0) {
        return Err(Error::InvalidParameter("s0 outside the profile domain"));
    }

    let kappa0 = profile.kappa(s0)?;
    let q0 = v0 / kappa0;
    let ellipse = w0 * w0 + q0 * q0;
    // NaN fails this comparison as well
    if !(ellipse.is_finite() && 1.0 - ellipse >= opts.guard) {
        return Err(Error::InitialCondition { w0, v0, ellipse });
    }

    let (lo, hi) = match opts.direction {
        Direction::Forward => (s0, domain.hi),
        Direction::Backward => (domain.lo, s0),
        Direction::Both => (domain.lo, domain.hi),
    };
    let (grid, origin) = anchored_grid(lo, hi, s0, opts.step);

    let sign = opts.sign.value();
    let initial = WState { s: s0, w: w0, v: v0 };

    let sweep = |targets: &mut dyn Iterator<Item = f64>| -> Result<(Vec<WState>, Termination)> {
        let mut states = Vec::new();
        let mut current = initial;
        for target in targets {
            match try_step_to(profile, sign, opts.guard, &current, target)? {
                Some(next) => {
                    states.push(next);
                    current = next;
                }
                None => {
                    let refined =
                        refine_exit(profile, sign, opts.guard, opts.step, &current, target - current.s)?;
                    let radicand = radicand(&refined, profile)?;
                    return Ok((
                        states,
                        Termination::DomainExit {
                            s_exit: refined.s,
                            radicand,
                        },
                    ));
                }
            }
        }
        Ok((states, Termination::ReachedEnd))
    };

    let mut forward = None;
    let mut backward = None;

    let (fwd_states, bwd_states) = match opts.direction {
        Direction::Forward => {
            let (st, term) = sweep(&mut grid[origin + 1..].iter().copied())?;
            forward = Some(term);
            (st, Vec::new())
        }
        Direction::Backward => {
            let (st, term) = sweep(&mut grid[..origin].iter().rev().copied())?;
            backward = Some(term);
            (Vec::new(), st)
        }
        Direction::Both => {
            let (fs, ft) = sweep(&mut grid[origin + 1..].iter().copied())?;
            let (bs, bt) = sweep(&mut grid[..origin].iter().rev().copied())?;
            forward = Some(ft);
            backward = Some(bt);
            (fs, bs)
        }
    };

    let mut states = Vec::with_capacity(bwd_states.len() + 1 + fwd_states.len());
    states.extend(bwd_states.iter().rev().copied());
    let origin_index = states.len();
    states.push(initial);
    states.extend(fwd_states);

    Ok(WSolution {
        states,
        step: opts.step,
        origin: origin_index,
        sign: opts.sign,
        forward,
        backward,
    })
}
