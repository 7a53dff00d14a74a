//! Curve recovery from a scalar solution: angle quadrature, position
//! quadrature, polar frames, and the chart-restart pipeline.
//!
//! With `ξ(s)` the solved tangent component and `φ = arccos ξ`, the azimuth
//!
//! ```text
//! θ(s) = ∫ κ √(1 - ξ² - (ξ'/κ)²) / (1 - ξ²) ds,     θ(s0) = 0
//! ```
//!
//! recovers the tangent `t = (sin φ cos θ, sin φ sin θ, cos φ)`, and the
//! positions follow from one more quadrature of `(√(1-ξ²) cos θ,
//! √(1-ξ²) sin θ, ξ)`. All integrals are composite trapezoid sums collocated
//! on the solver grid, so the whole pipeline shares one grid.
//!
//! The polar chart degenerates where `⟨b, e₃⟩ → 0` (the solver reports a
//! domain exit there) and where `ξ² → 1` (a hard [`Error::Pole`]). When
//! restarts are enabled, [`reconstruct`] leaves an exited chart by rotating
//! the seam frame so its binormal points into the open octant `(1,1,1)/√3`,
//! re-deriving scalar initial conditions there, and stitching the next piece
//! back through the inverse rotation. Each exit and restart is logged as an
//! event.

use alloc::vec::Vec;

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};

use crate::curve::{FrenetFrame, SampledCurve};
use crate::error::Error;
use crate::frenet::initial_conditions_from_frame;
use crate::grid::cumtrapz3;
#[cfg(not(feature = "std"))]
use crate::math::FloatExt;
use crate::ode::{
    radicand_value, solve_w, Direction, SolveOptions, Termination, TorsionSign, WSolution,
    DEFAULT_GUARD, DEFAULT_STEP,
};
use crate::profile::IntrinsicProfile;
use crate::Result;

/// Lower bound on `1 - ξ²`; below it the azimuth integrand has a pole
/// (tangent nearly parallel to `e₃`).
pub const POLE_EPS: f64 = 1e-12;

/// Default cap on chart restarts per sweep direction.
pub const DEFAULT_MAX_RESTARTS: usize = 16;

/// Cumulative azimuth samples on a solver grid, zero at the origin index.
#[derive(Debug, Clone)]
pub struct ThetaSeries {
    pub s: Vec<f64>,
    pub theta: Vec<f64>,
    pub origin: usize,
}

/// Azimuth integrand `±κ√(1 - ξ² - (ξ'/κ)²) / (1 - ξ²)` at each grid point.
///
/// This is exactly `κ ⟨b, e₃⟩ / sin²φ`, i.e. the analytic `θ'`, which the
/// frame assembly reuses.
fn theta_integrand(wsol: &WSolution, profile: &IntrinsicProfile) -> Result<Vec<f64>> {
    let sign = wsol.sign.value();
    let mut g = Vec::with_capacity(wsol.len());
    for st in &wsol.states {
        let kappa = profile.kappa(st.s)?;
        let rad = radicand_value(st.w, st.v, kappa);
        if rad < 0.0 {
            return Err(Error::NegativeRadicand {
                s: st.s,
                radicand: rad,
            });
        }
        let sin_sq = 1.0 - st.w * st.w;
        if sin_sq < POLE_EPS {
            return Err(Error::Pole { s: st.s, xi: st.w });
        }
        g.push(sign * kappa * rad.sqrt() / sin_sq);
    }
    Ok(g)
}

/// Cumulative trapezoid of the azimuth integrand on the solver grid, with
/// `θ(s0) = 0`.
pub fn theta_integral(wsol: &WSolution, profile: &IntrinsicProfile) -> Result<ThetaSeries> {
    let g = theta_integrand(wsol, profile)?;
    let s = wsol.grid();
    let theta = crate::grid::cumtrapz(&s, &g, wsol.origin);
    Ok(ThetaSeries {
        s,
        theta,
        origin: wsol.origin,
    })
}

/// Frame from the polar representation at one sample.
pub(crate) fn polar_frame(
    xi: f64,
    xi_prime: f64,
    kappa: f64,
    theta: f64,
    theta_prime: f64,
) -> FrenetFrame {
    let sin_phi = (1.0 - xi * xi).sqrt();
    let phi_prime = -xi_prime / sin_phi;
    let (sin_theta, cos_theta) = (theta.sin(), theta.cos());
    let tangent = Vector3::new(sin_phi * cos_theta, sin_phi * sin_theta, xi);
    // n = t'/κ with t' expanded in the polar coordinates
    let normal = Vector3::new(
        phi_prime * xi * cos_theta - theta_prime * sin_phi * sin_theta,
        phi_prime * xi * sin_theta + theta_prime * sin_phi * cos_theta,
        -phi_prime * sin_phi,
    ) / kappa;
    let binormal = tangent.cross(&normal);
    FrenetFrame::new(tangent, normal, binormal).orthonormalized()
}

/// Frenet frames on the solver grid, from `(ξ, ξ', θ, θ')` with
/// `φ = arccos ξ`.
pub fn frames_from_w(
    wsol: &WSolution,
    theta: &ThetaSeries,
    profile: &IntrinsicProfile,
) -> Result<Vec<FrenetFrame>> {
    if theta.s.len() != wsol.len() {
        return Err(Error::GridMismatch(
            "theta series and solution grids differ",
        ));
    }
    let theta_prime = theta_integrand(wsol, profile)?;
    let mut frames = Vec::with_capacity(wsol.len());
    for (i, st) in wsol.states.iter().enumerate() {
        let kappa = profile.kappa(st.s)?;
        frames.push(polar_frame(
            st.w,
            st.v,
            kappa,
            theta.theta[i],
            theta_prime[i],
        ));
    }
    Ok(frames)
}

/// Positions by cumulative trapezoid of `(√(1-ξ²) cos θ, √(1-ξ²) sin θ, ξ)`
/// on the solver grid, anchored so the sample at the solution origin equals
/// `start`; frames are attached from the same data.
pub fn position(
    wsol: &WSolution,
    profile: &IntrinsicProfile,
    start: Vector3<f64>,
) -> Result<SampledCurve> {
    let theta = theta_integral(wsol, profile)?;
    let integrand: Vec<Vector3<f64>> = wsol
        .states
        .iter()
        .zip(&theta.theta)
        .map(|(st, &th)| {
            let sin_phi = (1.0 - st.w * st.w).sqrt();
            Vector3::new(sin_phi * th.cos(), sin_phi * th.sin(), st.w)
        })
        .collect();
    let s = wsol.grid();
    let cum = cumtrapz3(&s, &integrand, wsol.origin);
    let positions = cum.iter().map(|c| start + c).collect();
    let frames = frames_from_w(wsol, &theta, profile)?;
    Ok(SampledCurve {
        s,
        positions,
        frames: Some(frames),
    })
}

/// Options for [`reconstruct`].
#[derive(Debug, Clone, Copy)]
pub struct ReconstructOptions {
    pub step: f64,
    pub guard: f64,
    pub direction: Direction,
    pub sign: TorsionSign,
    /// Continue past chart exits by rotating the seam frame into a fresh
    /// chart.
    pub restart: bool,
    pub max_restarts: usize,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions {
            step: DEFAULT_STEP,
            guard: DEFAULT_GUARD,
            direction: Direction::Forward,
            sign: TorsionSign::Positive,
            restart: false,
            max_restarts: DEFAULT_MAX_RESTARTS,
        }
    }
}

impl ReconstructOptions {
    fn solve_options(&self, direction: Direction) -> SolveOptions {
        SolveOptions {
            step: self.step,
            guard: self.guard,
            direction,
            sign: self.sign,
        }
    }
}

/// Events recorded while assembling a reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReconstructEvent {
    /// A chart ended before the domain endpoint.
    DomainExit {
        direction: Direction,
        s_exit: f64,
        radicand: f64,
    },
    /// A fresh chart was started at `s` from a rotated seam frame.
    Restart { direction: Direction, s: f64 },
}

/// A reconstructed curve together with the events met along the way.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub curve: SampledCurve,
    pub events: Vec<ReconstructEvent>,
    /// Index of the sample at `s0` in `curve`.
    pub origin: usize,
}

/// Proper rotation taking unit vector `from` to unit vector `to`.
fn rotation_taking(from: &Vector3<f64>, to: &Vector3<f64>) -> Matrix3<f64> {
    match Rotation3::rotation_between(from, to) {
        Some(r) => *r.matrix(),
        None => {
            // antiparallel: rotate half a turn about any perpendicular axis
            let helper = if from.x.abs() < 0.9 {
                Vector3::x()
            } else {
                Vector3::y()
            };
            let axis = Unit::new_normalize(from.cross(&helper));
            *Rotation3::from_axis_angle(&axis, core::f64::consts::PI).matrix()
        }
    }
}

/// One sweep direction with restarts; returns the assembled pieces (world
/// coordinates, in travel order) and the events.
fn chain(
    profile: &IntrinsicProfile,
    s0: f64,
    w0: f64,
    v0: f64,
    start: Vector3<f64>,
    dir: Direction,
    opts: &ReconstructOptions,
) -> Result<(Vec<SampledCurve>, Vec<ReconstructEvent>)> {
    debug_assert!(matches!(dir, Direction::Forward | Direction::Backward));
    let mut pieces: Vec<SampledCurve> = Vec::new();
    let mut events = Vec::new();

    let mut cur = (s0, w0, v0);
    let mut anchor = start;
    let mut transform = Matrix3::identity();
    // rotation into the fresh chart and the target frame there, pending
    // until the chart is solved and its own origin frame is known
    let mut pending: Option<(Matrix3<f64>, Matrix3<f64>)> = None;
    let mut restarts = 0usize;

    loop {
        let wsol = solve_w(profile, cur.0, cur.1, cur.2, &opts.solve_options(dir))?;
        let chart = position(&wsol, profile, Vector3::zeros())?;

        if let Some((rot, target)) = pending.take() {
            // the scalar data pins a frame only up to a rotation about e₃;
            // align the chart's origin frame onto the rotated seam frame
            let chart_frame = chart.frames.as_ref().expect("position attaches frames")
                [wsol.origin]
                .to_matrix();
            let align = target * chart_frame.transpose();
            transform = rot.transpose() * align;
        }

        let world = SampledCurve {
            s: chart.s.clone(),
            positions: chart.positions.iter().map(|p| anchor + transform * p).collect(),
            frames: chart
                .frames
                .as_ref()
                .map(|fs| fs.iter().map(|f| f.rotated(&transform)).collect()),
        };

        let term = match dir {
            Direction::Forward => wsol.forward.expect("forward sweep has a termination"),
            _ => wsol.backward.expect("backward sweep has a termination"),
        };
        pieces.push(world);

        match term {
            Termination::ReachedEnd => break,
            Termination::DomainExit { s_exit, radicand } => {
                events.push(ReconstructEvent::DomainExit {
                    direction: dir,
                    s_exit,
                    radicand,
                });
                if !opts.restart {
                    break;
                }
                if restarts >= opts.max_restarts {
                    return Err(Error::RestartLimit {
                        limit: opts.max_restarts,
                    });
                }
                restarts += 1;

                let piece = pieces.last().expect("just pushed");
                let seam_idx = match dir {
                    Direction::Forward => piece.len() - 1,
                    _ => 0,
                };
                let seam_s = piece.s[seam_idx];
                let seam_pos = piece.positions[seam_idx];
                let seam_frame = piece.frames.as_ref().expect("frames attached")[seam_idx];

                // rotate the seam binormal into the open octant, mirroring
                // the chart assumption ⟨b, eᵢ⟩ > 0
                let octant = opts.sign.value() / 3f64.sqrt();
                let target_b = Vector3::new(octant, octant, octant);
                let rot = rotation_taking(&seam_frame.binormal, &target_b);
                let rotated = seam_frame.rotated(&rot);
                let kappa_seam = profile.kappa(seam_s)?;
                let (nw0, nv0) = initial_conditions_from_frame(&rotated, kappa_seam)?;

                events.push(ReconstructEvent::Restart {
                    direction: dir,
                    s: seam_s,
                });
                cur = (seam_s, nw0, nv0);
                anchor = seam_pos;
                pending = Some((rot, rotated.to_matrix()));
            }
        }
    }

    Ok((pieces, events))
}

/// Concatenates the pieces of one sweep into a single increasing-`s` curve,
/// dropping the duplicated seam samples.
fn assemble(dir: Direction, pieces: Vec<SampledCurve>) -> SampledCurve {
    let mut out = SampledCurve {
        s: Vec::new(),
        positions: Vec::new(),
        frames: Some(Vec::new()),
    };
    let append = |out: &mut SampledCurve, piece: &SampledCurve, skip_first: bool| {
        let from = usize::from(skip_first);
        out.s.extend_from_slice(&piece.s[from..]);
        out.positions.extend_from_slice(&piece.positions[from..]);
        if let (Some(dst), Some(src)) = (out.frames.as_mut(), piece.frames.as_ref()) {
            dst.extend_from_slice(&src[from..]);
        }
    };
    match dir {
        Direction::Forward => {
            for (i, piece) in pieces.iter().enumerate() {
                append(&mut out, piece, i > 0);
            }
        }
        _ => {
            // pieces travel leftward, so ascending order is the reverse;
            // each piece's top sample reappears as the first sample of the
            // piece to its right
            for (i, piece) in pieces.iter().rev().enumerate() {
                append(&mut out, piece, i > 0);
            }
        }
    }
    out
}

/// Full pipeline: scalar solve, azimuth and position quadratures, frames,
/// and (when enabled) chart restarts.
///
/// Without restarts the returned curve simply ends at a chart exit; the
/// exit is still recorded in `events`.
pub fn reconstruct(
    profile: &IntrinsicProfile,
    s0: f64,
    w0: f64,
    v0: f64,
    start: Vector3<f64>,
    opts: &ReconstructOptions,
) -> Result<Reconstruction> {
    match opts.direction {
        Direction::Forward => {
            let (pieces, events) = chain(profile, s0, w0, v0, start, Direction::Forward, opts)?;
            Ok(Reconstruction {
                curve: assemble(Direction::Forward, pieces),
                events,
                origin: 0,
            })
        }
        Direction::Backward => {
            let (pieces, events) = chain(profile, s0, w0, v0, start, Direction::Backward, opts)?;
            let curve = assemble(Direction::Backward, pieces);
            let origin = curve.len() - 1;
            Ok(Reconstruction {
                curve,
                events,
                origin,
            })
        }
        Direction::Both => {
            let (bwd_pieces, bwd_events) =
                chain(profile, s0, w0, v0, start, Direction::Backward, opts)?;
            let (fwd_pieces, fwd_events) =
                chain(profile, s0, w0, v0, start, Direction::Forward, opts)?;
            let mut curve = assemble(Direction::Backward, bwd_pieces);
            let origin = curve.len() - 1;
            let fwd = assemble(Direction::Forward, fwd_pieces);
            curve.s.extend_from_slice(&fwd.s[1..]);
            curve.positions.extend_from_slice(&fwd.positions[1..]);
            if let (Some(dst), Some(src)) = (curve.frames.as_mut(), fwd.frames.as_ref()) {
                dst.extend_from_slice(&src[1..]);
            }
            let mut events = bwd_events;
            events.extend(fwd_events);
            Ok(Reconstruction {
                curve,
                events,
                origin,
            })
        }
    }
}
