//! Independent Frenet-Serret route: direct integration of the classical
//! frame equations, curvature/torsion estimation from sampled positions,
//! and rigid-motion alignment.
//!
//! [`frenet_integrate`] advances the twelve-dimensional system
//! `t' = κn`, `n' = -κt + τb`, `b' = -τn`, `p' = t` with RK4 and
//! re-orthonormalizes the triad after every step. It shares no code path
//! with the scalar reconstruction pipeline, which makes it the oracle the
//! uniqueness tests compare against.

use alloc::vec::Vec;

use nalgebra::{Matrix3, Vector3};

use crate::curve::{FrenetFrame, SampledCurve};
use crate::error::Error;
use crate::grid::anchored_grid;
#[cfg(not(feature = "std"))]
use crate::math::FloatExt;
use crate::ode::Direction;
use crate::profile::IntrinsicProfile;
use crate::Result;

/// Ellipse values this close to 1 are treated as sitting on the chart
/// boundary (`⟨b, e₃⟩ ≈ 0`) when deriving scalar initial conditions.
pub const CHART_BOUNDARY_EPS: f64 = 1e-12;

/// Squared-cross-product floor below which the torsion estimate is
/// considered degenerate.
pub const DEGENERATE_CROSS_EPS: f64 = 1e-14;

/// Proper rotation plus translation.
#[derive(Debug, Clone, PartialEq)]
pub struct RigidMotion {
    pub rotation: Matrix3<f64>,
    pub translation: Vector3<f64>,
}

impl RigidMotion {
    pub fn identity() -> Self {
        RigidMotion {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn apply_point(&self, p: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * p + self.translation
    }

    /// Applies the motion to positions and (if present) frames.
    pub fn apply_curve(&self, curve: &SampledCurve) -> SampledCurve {
        SampledCurve {
            s: curve.s.clone(),
            positions: curve.positions.iter().map(|p| self.apply_point(p)).collect(),
            frames: curve
                .frames
                .as_ref()
                .map(|frames| frames.iter().map(|f| f.rotated(&self.rotation)).collect()),
        }
    }

    /// Deviation from a proper rotation: `max(‖RᵀR - I‖_max, |det R - 1|)`.
    pub fn orthogonality_defect(&self) -> f64 {
        let gram = self.rotation.transpose() * self.rotation - Matrix3::identity();
        let gram_defect = gram.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        gram_defect.max((self.rotation.determinant() - 1.0).abs())
    }
}

#[derive(Clone, Copy)]
struct FrenetState {
    t: Vector3<f64>,
    n: Vector3<f64>,
    b: Vector3<f64>,
    p: Vector3<f64>,
}

impl FrenetState {
    fn axpy(&self, scale: f64, d: &FrenetDeriv) -> FrenetState {
        FrenetState {
            t: self.t + scale * d.t,
            n: self.n + scale * d.n,
            b: self.b + scale * d.b,
            p: self.p + scale * d.p,
        }
    }
}

#[derive(Clone, Copy)]
struct FrenetDeriv {
    t: Vector3<f64>,
    n: Vector3<f64>,
    b: Vector3<f64>,
    p: Vector3<f64>,
}

fn frenet_rhs(profile: &IntrinsicProfile, s: f64, y: &FrenetState) -> Result<FrenetDeriv> {
    let kappa = profile.kappa(s)?;
    let tau = profile.tau(s)?;
    Ok(FrenetDeriv {
        t: kappa * y.n,
        n: -kappa * y.t + tau * y.b,
        b: -tau * y.n,
        p: y.t,
    })
}

fn frenet_step(profile: &IntrinsicProfile, s: f64, target: f64, y: &FrenetState) -> Result<FrenetState> {
    let delta = target - s;
    let half = 0.5 * delta;
    let k1 = frenet_rhs(profile, s, y)?;
    let k2 = frenet_rhs(profile, s + half, &y.axpy(half, &k1))?;
    let k3 = frenet_rhs(profile, s + half, &y.axpy(half, &k2))?;
    let k4 = frenet_rhs(profile, target, &y.axpy(delta, &k3))?;
    let sixth = delta / 6.0;
    let mut next = FrenetState {
        t: y.t + sixth * (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t),
        n: y.n + sixth * (k1.n + 2.0 * k2.n + 2.0 * k3.n + k4.n),
        b: y.b + sixth * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b),
        p: y.p + sixth * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p),
    };
    // re-orthonormalize the triad after every step
    let frame = FrenetFrame::new(next.t, next.n, next.b).orthonormalized();
    next.t = frame.tangent;
    next.n = frame.normal;
    next.b = frame.binormal;
    Ok(next)
}

/// Integrates the Frenet-Serret system from the frame `frame0` and position
/// `p0` at `s0` across the profile domain.
pub fn frenet_integrate(
    profile: &IntrinsicProfile,
    s0: f64,
    frame0: &FrenetFrame,
    p0: Vector3<f64>,
    step: f64,
    direction: Direction,
) -> Result<SampledCurve> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidParameter("step must be positive and finite"));
    }
    let domain = profile.domain();
    if !domain.contains(s0) {
        return Err(Error::InvalidParameter("s0 outside the profile domain"));
    }
    if frame0.orthonormality_defect() > 1e-6 {
        return Err(Error::InvalidParameter(
            "initial frame is not orthonormal and right-handed",
        ));
    }

    let (lo, hi) = match direction {
        Direction::Forward => (s0, domain.hi),
        Direction::Backward => (domain.lo, s0),
        Direction::Both => (domain.lo, domain.hi),
    };
    let (grid, origin) = anchored_grid(lo, hi, s0, step);

    let clean = frame0.orthonormalized();
    let initial = FrenetState {
        t: clean.tangent,
        n: clean.normal,
        b: clean.binormal,
        p: p0,
    };

    let mut states: Vec<FrenetState> = alloc::vec![initial; grid.len()];
    let mut current = initial;
    for i in origin..grid.len() - 1 {
        current = frenet_step(profile, grid[i], grid[i + 1], &current)?;
        states[i + 1] = current;
    }
    current = initial;
    for i in (0..origin).rev() {
        current = frenet_step(profile, grid[i + 1], grid[i], &current)?;
        states[i] = current;
    }

    Ok(SampledCurve {
        s: grid,
        positions: states.iter().map(|y| y.p).collect(),
        frames: Some(
            states
                .iter()
                .map(|y| FrenetFrame::new(y.t, y.n, y.b))
                .collect(),
        ),
    })
}

/// Pointwise curvature and torsion estimates on the interior of a grid.
#[derive(Debug, Clone)]
pub struct KappaTauEstimate {
    /// Index into the source grid of the first estimated sample; the three
    /// samples on each side of the grid carry no estimate.
    pub first: usize,
    pub s: Vec<f64>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
}

impl KappaTauEstimate {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

/// Estimates `κ` and `τ` from sampled positions by centered finite
/// differences (`κ = ‖α''‖`, `τ = (α' ∧ α'') · α''' / ‖α' ∧ α''‖²`).
///
/// Requires at least 7 samples on a uniform grid; the first and last grid
/// intervals may be short (they are never touched by the interior
/// stencils). Three samples per side are excluded from the output.
pub fn estimate_kappa_tau(curve: &SampledCurve) -> Result<KappaTauEstimate> {
    let n = curve.len();
    if n < 7 {
        return Err(Error::InvalidParameter(
            "curvature/torsion estimation requires at least 7 samples",
        ));
    }
    let s = &curve.s;
    let h = s[n / 2 + 1] - s[n / 2];
    for j in 1..n - 2 {
        if ((s[j + 1] - s[j]) - h).abs() > 1e-6 * h {
            return Err(Error::GridMismatch("interior grid spacing is not uniform"));
        }
    }

    let p = &curve.positions;
    let mut out = KappaTauEstimate {
        first: 3,
        s: Vec::with_capacity(n - 6),
        kappa: Vec::with_capacity(n - 6),
        tau: Vec::with_capacity(n - 6),
    };
    let h2 = h * h;
    let h3 = h2 * h;
    for i in 3..n - 3 {
        let d1 = (p[i + 1] - p[i - 1]) / (2.0 * h);
        let d2 = (p[i + 1] - 2.0 * p[i] + p[i - 1]) / h2;
        let d3 = (p[i + 2] - 2.0 * p[i + 1] + 2.0 * p[i - 1] - p[i - 2]) / (2.0 * h3);
        let cross = d1.cross(&d2);
        let denom = cross.norm_squared();
        if denom < DEGENERATE_CROSS_EPS {
            return Err(Error::DegenerateCurvature { s: s[i] });
        }
        out.s.push(s[i]);
        out.kappa.push(d2.norm());
        out.tau.push(cross.dot(&d3) / denom);
    }
    Ok(out)
}

/// Least-squares proper-rotation alignment of `a` onto `b` (Kabsch) and the
/// post-alignment root-mean-square deviation.
///
/// The two curves must share their grid. Reflections are excluded by
/// construction: when the unconstrained optimum is improper, the singular
/// direction with the smallest singular value is flipped.
pub fn kabsch_align(a: &SampledCurve, b: &SampledCurve) -> Result<(RigidMotion, f64)> {
    let n = a.len();
    if n != b.len() {
        return Err(Error::GridMismatch("sample counts differ"));
    }
    if n < 3 {
        return Err(Error::GridMismatch("need at least 3 samples to align"));
    }
    for (sa, sb) in a.s.iter().zip(&b.s) {
        if (sa - sb).abs() > 1e-9 {
            return Err(Error::GridMismatch("arc-length grids differ"));
        }
    }

    let inv_n = 1.0 / n as f64;
    let centroid_a: Vector3<f64> = a.positions.iter().sum::<Vector3<f64>>() * inv_n;
    let centroid_b: Vector3<f64> = b.positions.iter().sum::<Vector3<f64>>() * inv_n;

    let mut cross_cov = Matrix3::zeros();
    for (pa, pb) in a.positions.iter().zip(&b.positions) {
        cross_cov += (pa - centroid_a) * (pb - centroid_b).transpose();
    }

    let svd = cross_cov.svd(true, true);
    let u = svd.u.expect("svd requested u");
    let v = svd.v_t.expect("svd requested v_t").transpose();

    let mut d = Vector3::new(1.0, 1.0, 1.0);
    if (v * u.transpose()).determinant() < 0.0 {
        let smallest = svd.singular_values.imin();
        d[smallest] = -1.0;
    }
    let rotation = v * Matrix3::from_diagonal(&d) * u.transpose();
    let translation = centroid_b - rotation * centroid_a;
    let motion = RigidMotion {
        rotation,
        translation,
    };

    let mut sum_sq = 0.0;
    for (pa, pb) in a.positions.iter().zip(&b.positions) {
        sum_sq += (motion.apply_point(pa) - pb).norm_squared();
    }
    let rmsd = (sum_sq * inv_n).sqrt();
    Ok((motion, rmsd))
}

/// Scalar initial conditions `(w0, v0) = (⟨t, e₃⟩, κ₀⟨n, e₃⟩)` read off a
/// frame.
///
/// Rejects frames on or outside the admissible ellipse, which is exactly
/// the locus `⟨b, e₃⟩ ≈ 0`; the caller should rotate the frame first (see
/// the restart machinery in the reconstruction pipeline).
pub fn initial_conditions_from_frame(frame: &FrenetFrame, kappa0: f64) -> Result<(f64, f64)> {
    if !(kappa0.is_finite() && kappa0 > 0.0) {
        return Err(Error::InvalidParameter("kappa0 must be positive and finite"));
    }
    let w0 = frame.tangent.z;
    let nz = frame.normal.z;
    let ellipse = w0 * w0 + nz * nz;
    if !(ellipse.is_finite() && ellipse < 1.0 - CHART_BOUNDARY_EPS) {
        return Err(Error::ChartBoundary { ellipse });
    }
    Ok((w0, kappa0 * nz))
}
