//! Closed-form helix generators, the slant-helix torsion law, the σ
//! invariant, and a profile classifier.
//!
//! A general helix (tangent at constant angle to a fixed direction) has
//! `τ/κ ≡ m`; its closed form integrates `cos`/`sin` of the scaled
//! curvature integral and has exactly linear height. A slant helix
//! (principal normal at constant angle) has constant
//! `σ = κ² (τ/κ)' / (κ² + τ²)^{3/2}`, its torsion follows the law
//! implemented by [`SlantTorsion`], and its closed form is driven by
//! `ξ = (m/√(1+m²)) ∫₀ˢ κ`.
//!
//! The generated slant curve is cross-checked against the reconstruction
//! pipeline fed with the same intrinsic data; if the alignment fails the
//! `y` sign branch is flipped and the decision is reported in the returned
//! [`SlantHelixOutcome`].

use alloc::sync::Arc;
use alloc::vec::Vec;

use nalgebra::Vector3;

use crate::curve::{FrenetFrame, SampledCurve};
use crate::error::Error;
use crate::frenet::kabsch_align;
use crate::grid::{anchored_grid, cumtrapz, cumtrapz3};
#[cfg(not(feature = "std"))]
use crate::math::FloatExt;
use crate::ode::Direction;
use crate::profile::{IntrinsicProfile, Interval, ScalarField};
use crate::reconstruct::{polar_frame, reconstruct, ReconstructOptions};
use crate::Result;

/// Margin kept between `|m·∫κ|` and 1 by the slant generator.
pub const SLANT_MARGIN: f64 = 1e-9;

/// Stencil for the `(τ/κ)'` central difference in [`sigma_invariant`].
pub const SIGMA_STENCIL: f64 = 1e-5;

/// Number of samples used by [`sigma_invariant`] and [`classify`].
const CLASSIFY_SAMPLES: usize = 201;

/// Alignment threshold above which the slant generator flips its `y` sign
/// branch.
const SLANT_FLIP_TOL: f64 = 1e-3;

/// Classification of an intrinsic profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HelixClass {
    /// `τ/κ` constant with value `m`.
    GeneralHelix(f64),
    /// σ constant with value `m` (and not a general helix).
    SlantHelix(f64),
    Generic,
}

fn check_step(h: f64) -> Result<()> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidParameter("step must be positive and finite"));
    }
    Ok(())
}

/// Grid anchor: zero when the domain contains it (so `∫₀ˢ` anchors land on
/// a grid point), the left end otherwise.
fn grid_anchor(domain: Interval) -> f64 {
    if domain.contains(0.0) {
        0.0
    } else {
        domain.lo
    }
}

/// `∫₀^anchor κ` by trapezoid on an auxiliary grid (zero when the anchor is
/// the origin itself).
fn kappa_integral_to(kappa: &dyn ScalarField, anchor: f64, h: f64) -> Result<f64> {
    if anchor == 0.0 {
        return Ok(0.0);
    }
    let (lo, hi) = if anchor < 0.0 { (anchor, 0.0) } else { (0.0, anchor) };
    let (grid, origin) = anchored_grid(lo, hi, 0.0, h);
    let values = grid
        .iter()
        .map(|&s| kappa.eval(s))
        .collect::<Result<Vec<f64>>>()?;
    let cum = cumtrapz(&grid, &values, origin);
    Ok(if anchor < 0.0 { cum[0] } else { *cum.last().unwrap() })
}

/// Unit-speed general helix with slope parameter `m` and curvature `κ(s)`:
///
/// ```text
/// x = (1/√(1+m²)) ∫ cos(√(1+m²) ∫κ) ds
/// y = (1/√(1+m²)) ∫ sin(√(1+m²) ∫κ) ds
/// z = m s / √(1+m²)
/// ```
///
/// The nested integral is a cumulative trapezoid on the uniform grid; the
/// height is evaluated directly, so its increments are exactly linear.
/// Analytic frames are attached.
pub fn general_helix(
    m: f64,
    kappa: &dyn ScalarField,
    domain: Interval,
    h: f64,
) -> Result<SampledCurve> {
    check_step(h)?;
    if !m.is_finite() {
        return Err(Error::InvalidParameter("m must be finite"));
    }
    let anchor = grid_anchor(domain);
    let (s, origin) = anchored_grid(domain.lo, domain.hi, anchor, h);

    let kappa_s = s
        .iter()
        .map(|&si| kappa.eval(si))
        .collect::<Result<Vec<f64>>>()?;
    let scale = (1.0 + m * m).sqrt();
    let inv = 1.0 / scale;
    let kappa_cum = cumtrapz(&s, &kappa_s, origin);

    let mut integrand = Vec::with_capacity(s.len());
    let mut frames = Vec::with_capacity(s.len());
    for kc in &kappa_cum {
        let psi = scale * kc;
        let (sin_psi, cos_psi) = (psi.sin(), psi.cos());
        integrand.push(Vector3::new(cos_psi * inv, sin_psi * inv, 0.0));
        let tangent = Vector3::new(cos_psi * inv, sin_psi * inv, m * inv);
        let normal = Vector3::new(-sin_psi, cos_psi, 0.0);
        frames.push(FrenetFrame::new(tangent, normal, tangent.cross(&normal)).orthonormalized());
    }

    let cum = cumtrapz3(&s, &integrand, origin);
    let positions = s
        .iter()
        .zip(&cum)
        .map(|(&si, c)| Vector3::new(c.x, c.y, m * si * inv))
        .collect();

    Ok(SampledCurve {
        s,
        positions,
        frames: Some(frames),
    })
}

/// Torsion law of a slant helix with invariant `m` and integration constant
/// `A`:
///
/// ```text
/// τ(s) = κ(s) · g / √(1 - g²),     g = m ∫₀ˢ κ + A
/// ```
///
/// The curvature integral is cached on a uniform grid at construction
/// (immutable afterwards, so the field is freely shareable); queries between
/// nodes add a two-point Gauss correction so the evaluated integral stays
/// smooth. The law is signed in `g`: this is the branch under which
/// `ξ = (m/√(1+m²)) ∫₀ˢ κ` solves the scalar equation across the whole
/// chart, and the generated curve keeps `σ ≡ m` on both sides of `g = 0`.
pub struct SlantTorsion {
    m: f64,
    a: f64,
    kappa: Arc<dyn ScalarField>,
    grid: Vec<f64>,
    cum: Vec<f64>,
    step: f64,
}

impl core::fmt::Debug for SlantTorsion {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SlantTorsion")
            .field("m", &self.m)
            .field("a", &self.a)
            .field("samples", &self.grid.len())
            .finish_non_exhaustive()
    }
}

impl SlantTorsion {
    /// Builds the law for queries within `domain`; fails where the chart
    /// condition `|m·∫₀ˢκ + A| < 1` is violated on it.
    pub fn new(
        m: f64,
        a: f64,
        kappa: Arc<dyn ScalarField>,
        domain: Interval,
        step: f64,
    ) -> Result<Self> {
        check_step(step)?;
        if !(m.is_finite() && a.is_finite()) {
            return Err(Error::InvalidParameter("m and A must be finite"));
        }
        // the cache hull always includes 0, the anchor of ∫₀ˢ
        let lo = domain.lo.min(0.0);
        let hi = domain.hi.max(0.0);
        let (grid, origin) = anchored_grid(lo, hi, 0.0, step);
        let values = grid
            .iter()
            .map(|&s| kappa.eval(s))
            .collect::<Result<Vec<f64>>>()?;
        let cum = cumtrapz(&grid, &values, origin);
        let law = SlantTorsion {
            m,
            a,
            kappa,
            grid,
            cum,
            step,
        };
        for (&s, &k) in law.grid.iter().zip(&law.cum) {
            if domain.contains(s) {
                let g = m * k + a;
                if g.abs() >= 1.0 {
                    return Err(Error::SlantChart { s, value: g });
                }
            }
        }
        Ok(law)
    }

    /// `∫₀ˢ κ` from the cached prefix plus a local two-point Gauss
    /// correction.
    pub fn kappa_integral(&self, s: f64) -> Result<f64> {
        let first = self.grid[0];
        let last = *self.grid.last().unwrap();
        if s < first - 1e-9 || s > last + 1e-9 {
            return Err(Error::InvalidParameter(
                "arc length outside the cached slant-torsion grid",
            ));
        }
        let rel = (s - first).max(0.0);
        let mut idx = ((rel / self.step).floor() as usize).min(self.grid.len() - 1);
        // short edge intervals can make the division overshoot by one cell
        while idx > 0 && self.grid[idx] > s {
            idx -= 1;
        }
        let base = self.grid[idx];
        let delta = (s - base).max(0.0);
        if delta == 0.0 {
            return Ok(self.cum[idx]);
        }
        let mid = base + 0.5 * delta;
        let offset = 0.5 * delta / 3f64.sqrt();
        let local = 0.5 * delta * (self.kappa.eval(mid - offset)? + self.kappa.eval(mid + offset)?);
        Ok(self.cum[idx] + local)
    }
}

impl ScalarField for SlantTorsion {
    fn eval(&self, s: f64) -> Result<f64> {
        let g = self.m * self.kappa_integral(s)? + self.a;
        if g.abs() >= 1.0 {
            return Err(Error::SlantChart { s, value: g });
        }
        Ok(self.kappa.eval(s)? * g / (1.0 - g * g).sqrt())
    }
}

/// A generated slant helix plus the record of its oracle cross-check.
#[derive(Debug, Clone)]
pub struct SlantHelixOutcome {
    pub curve: SampledCurve,
    /// Whether the `y` sign branch had to be flipped to match the
    /// reconstruction oracle.
    pub y_flipped: bool,
    /// Kabsch RMSD against the reconstruction of `(κ, slant torsion)`.
    pub validation_rmsd: f64,
}

fn mirror_y(curve: &SampledCurve) -> SampledCurve {
    let flip = |v: &Vector3<f64>| Vector3::new(v.x, -v.y, v.z);
    SampledCurve {
        s: curve.s.clone(),
        positions: curve.positions.iter().map(flip).collect(),
        frames: curve.frames.as_ref().map(|fs| {
            fs.iter()
                .map(|f| {
                    let t = flip(&f.tangent);
                    let n = flip(&f.normal);
                    FrenetFrame::new(t, n, t.cross(&n))
                })
                .collect()
        }),
    }
}

/// Unit-speed slant helix with invariant `m ≠ 0` and curvature `κ(s)`.
///
/// The closed-form integrands are evaluated on the uniform grid (with
/// `ξ = (m/√(1+m²)) ∫₀ˢ κ` and a closed-form azimuth) and integrated by
/// trapezoid. The produced curve is validated against the reconstruction
/// pipeline fed with `(κ, SlantTorsion(m, 0, κ))`; if the alignment fails,
/// the `y` sign branch is flipped and the better branch is returned.
pub fn slant_helix(
    m: f64,
    kappa: Arc<dyn ScalarField>,
    domain: Interval,
    h: f64,
) -> Result<SlantHelixOutcome> {
    check_step(h)?;
    if !(m.is_finite() && m != 0.0) {
        return Err(Error::InvalidParameter("slant helix requires finite m ≠ 0"));
    }
    let anchor = grid_anchor(domain);
    let (s, origin) = anchored_grid(domain.lo, domain.hi, anchor, h);

    let kappa_s = s
        .iter()
        .map(|&si| kappa.eval(si))
        .collect::<Result<Vec<f64>>>()?;
    let offset = kappa_integral_to(kappa.as_ref(), anchor, h)?;
    let mut kappa_cum = cumtrapz(&s, &kappa_s, origin);
    for k in &mut kappa_cum {
        *k += offset;
    }

    let scale = (1.0 + m * m).sqrt();
    let delta = m / scale;

    // closed-form azimuth, normalized to zero at the anchor
    let theta_raw = |u: f64, k: f64| -> f64 {
        -(scale / m) * u.acos() - (m * m * k / (scale * (1.0 - u * u).sqrt())).atan()
    };

    let mut theta = Vec::with_capacity(s.len());
    for (&si, &k) in s.iter().zip(&kappa_cum) {
        let u = m * k;
        if u.abs() >= 1.0 - SLANT_MARGIN {
            return Err(Error::SlantChart { s: si, value: u });
        }
        theta.push(theta_raw(u, k));
    }
    let theta0 = theta[origin];
    for th in &mut theta {
        *th -= theta0;
    }

    let mut integrand = Vec::with_capacity(s.len());
    let mut frames = Vec::with_capacity(s.len());
    for i in 0..s.len() {
        let k = kappa_cum[i];
        let u = m * k;
        let xi = delta * k;
        let xi_prime = delta * kappa_s[i];
        let sin_phi = (1.0 - xi * xi).sqrt();
        integrand.push(Vector3::new(
            sin_phi * theta[i].cos(),
            sin_phi * theta[i].sin(),
            xi,
        ));
        let theta_prime = kappa_s[i] * scale * (1.0 - u * u).sqrt() / (1.0 + m * m - u * u);
        frames.push(polar_frame(xi, xi_prime, kappa_s[i], theta[i], theta_prime));
    }

    let cum = cumtrapz3(&s, &integrand, origin);
    let candidate = SampledCurve {
        s: s.clone(),
        positions: cum,
        frames: Some(frames),
    };

    // oracle cross-check: the intrinsic data is unambiguous, so the
    // reconstruction pipeline arbitrates the sign branch
    let torsion = SlantTorsion::new(m, 0.0, kappa.clone(), domain, h)?;
    let profile = IntrinsicProfile::new(kappa, Arc::new(torsion), domain)?;
    let s0 = s[origin];
    let direction = if origin == 0 {
        Direction::Forward
    } else if origin + 1 == s.len() {
        Direction::Backward
    } else {
        Direction::Both
    };
    let opts = ReconstructOptions {
        step: h,
        direction,
        restart: true,
        ..ReconstructOptions::default()
    };
    let w0 = delta * kappa_cum[origin];
    let v0 = delta * kappa_s[origin];
    let oracle = reconstruct(&profile, s0, w0, v0, Vector3::zeros(), &opts)?;

    let (_, rmsd) = kabsch_align(&candidate, &oracle.curve)?;
    if rmsd <= SLANT_FLIP_TOL {
        return Ok(SlantHelixOutcome {
            curve: candidate,
            y_flipped: false,
            validation_rmsd: rmsd,
        });
    }
    let flipped = mirror_y(&candidate);
    let (_, rmsd_flipped) = kabsch_align(&flipped, &oracle.curve)?;
    if rmsd_flipped < rmsd {
        Ok(SlantHelixOutcome {
            curve: flipped,
            y_flipped: true,
            validation_rmsd: rmsd_flipped,
        })
    } else {
        Ok(SlantHelixOutcome {
            curve: candidate,
            y_flipped: false,
            validation_rmsd: rmsd,
        })
    }
}

/// Samples `σ = κ² (τ/κ)' / (κ² + τ²)^{3/2}` on a uniform grid of 201
/// points, clipped by the derivative stencil so the profile is never
/// evaluated outside its domain.
pub fn sigma_invariant(profile: &IntrinsicProfile) -> Result<Vec<(f64, f64)>> {
    let domain = profile.domain();
    let lo = domain.lo + SIGMA_STENCIL;
    let hi = domain.hi - SIGMA_STENCIL;
    if hi - lo < 10.0 * SIGMA_STENCIL {
        return Err(Error::InvalidParameter(
            "domain too short for the sigma stencil",
        ));
    }
    let n = CLASSIFY_SAMPLES;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let s = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let ratio = |at: f64| -> Result<f64> { Ok(profile.tau(at)? / profile.kappa(at)?) };
        let ratio_prime =
            (ratio(s + SIGMA_STENCIL)? - ratio(s - SIGMA_STENCIL)?) / (2.0 * SIGMA_STENCIL);
        let kappa = profile.kappa(s)?;
        let tau = profile.tau(s)?;
        let k2 = kappa * kappa;
        let sigma = k2 * ratio_prime / (k2 + tau * tau).powf(1.5);
        out.push((s, sigma));
    }
    Ok(out)
}

fn spread_and_mean(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let mut count = 0usize;
    for v in values {
        min = min.min(v);
        max = max.max(v);
        sum += v;
        count += 1;
    }
    (max - min, sum / count as f64)
}

/// Classifies a profile by constancy of `τ/κ` (general helix) and then of σ
/// (slant helix), with the spread threshold scaled by `1 + |mean|`.
///
/// A general helix has `σ ≡ 0`, so the `τ/κ` test runs first.
pub fn classify(profile: &IntrinsicProfile, tol: f64) -> Result<HelixClass> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive and finite"));
    }
    let domain = profile.domain();
    let lo = domain.lo + SIGMA_STENCIL;
    let hi = domain.hi - SIGMA_STENCIL;
    let n = CLASSIFY_SAMPLES;
    let mut ratios = Vec::with_capacity(n);
    for i in 0..n {
        let s = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        ratios.push(profile.tau(s)? / profile.kappa(s)?);
    }
    let (spread, mean) = spread_and_mean(ratios.into_iter());
    if spread <= tol * (1.0 + mean.abs()) {
        return Ok(HelixClass::GeneralHelix(mean));
    }

    let sigma = sigma_invariant(profile)?;
    let (spread, mean) = spread_and_mean(sigma.into_iter().map(|(_, v)| v));
    if spread <= tol * (1.0 + mean.abs()) && mean.abs() > tol {
        return Ok(HelixClass::SlantHelix(mean));
    }
    Ok(HelixClass::Generic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::estimate_kappa_tau;
    use crate::profile::FieldFn;
    use approx::assert_relative_eq;

    fn interval(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn general_helix_with_zero_slope_is_a_planar_circle() {
        let curve = general_helix(0.0, &1.0, interval(0.0, 4.0), 1e-3).unwrap();
        for (s, p) in curve.s.iter().zip(&curve.positions) {
            assert_eq!(p.z, 0.0);
            let expected = Vector3::new(s.sin(), 1.0 - s.cos(), 0.0);
            assert!((p - expected).norm() < 1e-6);
        }
    }

    #[test]
    fn general_helix_unit_slope() {
        let curve = general_helix(1.0, &1.0, interval(0.0, 4.0), 1e-3).unwrap();
        let r = core::f64::consts::FRAC_1_SQRT_2;
        // height increments exactly linear with slope 1/√2
        for i in 1..curve.len() {
            let dz = curve.positions[i].z - curve.positions[i - 1].z;
            let ds = curve.s[i] - curve.s[i - 1];
            assert_relative_eq!(dz / ds, r, epsilon = 1e-9);
        }
        for f in curve.frames.as_ref().unwrap() {
            assert_relative_eq!(f.tangent.z, r, epsilon = 1e-12);
        }
        let est = estimate_kappa_tau(&curve).unwrap();
        for (k, t) in est.kappa.iter().zip(&est.tau) {
            assert_relative_eq!(*k, 1.0, epsilon = 1e-3);
            assert_relative_eq!(*t, 1.0, epsilon = 1e-3);
        }
        assert!(curve.max_unit_speed_deviation() < 5e-3);
    }

    #[test]
    fn general_helix_tangent_angle_is_constant_for_all_slopes() {
        let wavy = FieldFn(|s: f64| 1.0 + 0.3 * s.sin());
        let kappas: [&dyn ScalarField; 2] = [&1.0, &wavy];
        for &m in &[-3.0f64, -1.0, -0.25, 0.25, 1.0, 3.0] {
            let target = m / (1.0 + m * m).sqrt();
            for kappa in kappas {
                let curve = general_helix(m, kappa, interval(0.0, 2.0), 1e-3).unwrap();
                for f in curve.frames.as_ref().unwrap() {
                    assert!((f.tangent.z - target).abs() <= 1e-6, "m = {m}");
                }
                assert!(curve.max_unit_speed_deviation() < 5e-3);
            }
        }
    }

    #[test]
    fn slant_helix_normal_angle_for_the_invariant_family() {
        // the estimated principal normal α''/‖α''‖ keeps |⟨n̂, e₃⟩| at
        // |m|/√(1+m²) across the grid
        for &m in &[-0.5f64, -0.3, 0.3, 0.5] {
            let out = slant_helix(m, Arc::new(1.0), interval(-1.9, 1.9), 1e-3).unwrap();
            assert!(out.validation_rmsd <= 1e-4, "m = {m}");
            let curve = &out.curve;
            let target = m.abs() / (1.0 + m * m).sqrt();
            let n = curve.len();
            let h = curve.s[n / 2 + 1] - curve.s[n / 2];
            for i in 5..n - 5 {
                let d2 = (curve.positions[i + 1] - 2.0 * curve.positions[i]
                    + curve.positions[i - 1])
                    / (h * h);
                let nz = d2.normalize().z.abs();
                assert!((nz - target).abs() <= 1e-3, "m = {m}, i = {i}, nz = {nz}");
            }
        }
    }

    #[test]
    fn slant_torsion_hand_values() {
        let law = SlantTorsion::new(0.5, 0.0, Arc::new(1.0), interval(-1.9, 1.9), 1e-3).unwrap();
        assert_eq!(law.eval(0.0).unwrap(), 0.0);
        // √(0.25 / 0.75) by hand substitution
        assert_relative_eq!(
            law.eval(1.0).unwrap(),
            (0.25f64 / 0.75).sqrt(),
            epsilon = 1e-12
        );
        // the law is signed: the chart crosses g = 0 smoothly
        assert_relative_eq!(
            law.eval(-1.0).unwrap(),
            -(0.25f64 / 0.75).sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn slant_torsion_between_nodes_and_at_the_cache_edges() {
        // κ = 1 + 0.2 sin s has the exact integral s - 0.2(cos s - 1)
        let kappa = FieldFn(|s: f64| 1.0 + 0.2 * s.sin());
        let law =
            SlantTorsion::new(0.4, 0.0, Arc::new(kappa), interval(-1.7, 1.7), 1e-3).unwrap();
        // the cached prefix carries the composite trapezoid's O(h²) error;
        // what matters is that off-node queries stay on the same smooth curve
        for &s in &[-1.7f64, -1.23456789, -0.0004567, 0.0, 0.7770001, 1.7] {
            let exact = s - 0.2 * (s.cos() - 1.0);
            assert_relative_eq!(law.kappa_integral(s).unwrap(), exact, epsilon = 1e-7);
        }
        // the slack region just outside the cache stays finite and tiny
        assert!(law.kappa_integral(-1.7 - 5e-10).unwrap().is_finite());
        assert!(law.kappa_integral(-1.8).is_err());
    }

    #[test]
    fn slant_torsion_chart_end_is_an_error() {
        let err = SlantTorsion::new(0.5, 0.0, Arc::new(1.0), interval(0.0, 2.0), 1e-3).unwrap_err();
        match err {
            Error::SlantChart { s, value } => {
                assert_relative_eq!(s, 2.0, epsilon = 1e-9);
                assert_relative_eq!(value, 1.0, epsilon = 1e-9);
            }
            other => panic!("expected SlantChart, got {other:?}"),
        }
    }

    #[test]
    fn slant_helix_matches_its_reconstruction() {
        let out = slant_helix(0.5, Arc::new(1.0), interval(-1.9, 1.9), 1e-3).unwrap();
        assert!(!out.y_flipped);
        assert!(out.validation_rmsd <= 1e-4, "rmsd {}", out.validation_rmsd);
        let delta = 0.5 / 1.25f64.sqrt();
        for f in out.curve.frames.as_ref().unwrap() {
            assert_relative_eq!(f.normal.z, delta, epsilon = 1e-9);
        }
        assert!(out.curve.max_unit_speed_deviation() < 5e-3);
    }

    #[test]
    fn slant_helix_negative_invariant() {
        let out = slant_helix(-0.5, Arc::new(1.0), interval(-1.9, 1.9), 1e-3).unwrap();
        assert!(out.validation_rmsd <= 1e-4, "rmsd {}", out.validation_rmsd);
        let delta = -0.5 / 1.25f64.sqrt();
        for f in out.curve.frames.as_ref().unwrap() {
            assert_relative_eq!(f.normal.z, delta, epsilon = 1e-9);
        }
    }

    #[test]
    fn slant_helix_on_a_domain_away_from_the_integral_anchor() {
        // ∫₀ˢκ anchors at zero even when the domain excludes it
        let out = slant_helix(0.3, Arc::new(1.0), interval(0.5, 1.5), 1e-3).unwrap();
        assert!(!out.y_flipped);
        assert!(out.validation_rmsd <= 1e-4, "rmsd {}", out.validation_rmsd);
        let delta = 0.3 / 1.09f64.sqrt();
        for f in out.curve.frames.as_ref().unwrap() {
            assert_relative_eq!(f.normal.z, delta, epsilon = 1e-9);
        }
    }

    #[test]
    fn slant_helix_rejects_zero_m() {
        assert!(matches!(
            slant_helix(0.0, Arc::new(1.0), interval(-1.0, 1.0), 1e-3),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn sigma_of_general_helix_vanishes() {
        let p = IntrinsicProfile::new(Arc::new(1.0), Arc::new(1.0), interval(0.0, 2.0)).unwrap();
        for (_, sigma) in sigma_invariant(&p).unwrap() {
            assert!(sigma.abs() <= 1e-9);
        }
    }

    #[test]
    fn sigma_of_linear_torsion() {
        // κ ≡ 1, τ = s has σ(s) = (1 + s²)^{-3/2}
        let p = IntrinsicProfile::new(
            Arc::new(1.0),
            Arc::new(FieldFn(|s: f64| s)),
            interval(0.0, 2.0),
        )
        .unwrap();
        for (s, sigma) in sigma_invariant(&p).unwrap() {
            assert_relative_eq!(sigma, (1.0 + s * s).powf(-1.5), epsilon = 1e-6);
        }
        let at_one = sigma_invariant(&p)
            .unwrap()
            .into_iter()
            .min_by(|a, b| {
                (a.0 - 1.0).abs().partial_cmp(&(b.0 - 1.0).abs()).unwrap()
            })
            .unwrap();
        assert_relative_eq!(at_one.1, 0.35355, epsilon = 1e-3);
    }

    #[test]
    fn sigma_of_slant_law_is_the_invariant() {
        let kappa: Arc<dyn ScalarField> = Arc::new(1.0);
        let law = SlantTorsion::new(0.5, 0.0, kappa.clone(), interval(-1.9, 1.9), 1e-3).unwrap();
        let p = IntrinsicProfile::new(kappa, Arc::new(law), interval(-1.9, 1.9)).unwrap();
        for (_, sigma) in sigma_invariant(&p).unwrap() {
            assert_relative_eq!(sigma, 0.5, epsilon = 1e-6);
        }
    }

    #[test]
    fn classify_the_three_reference_profiles() {
        let general =
            IntrinsicProfile::new(Arc::new(1.0), Arc::new(1.0), interval(0.0, 2.0)).unwrap();
        match classify(&general, 1e-6).unwrap() {
            HelixClass::GeneralHelix(m) => assert_relative_eq!(m, 1.0, epsilon = 1e-6),
            other => panic!("expected general helix, got {other:?}"),
        }

        let kappa: Arc<dyn ScalarField> = Arc::new(1.0);
        let law = SlantTorsion::new(0.5, 0.0, kappa.clone(), interval(-1.9, 1.9), 1e-3).unwrap();
        let slant = IntrinsicProfile::new(kappa, Arc::new(law), interval(-1.9, 1.9)).unwrap();
        match classify(&slant, 1e-6).unwrap() {
            HelixClass::SlantHelix(m) => assert_relative_eq!(m, 0.5, epsilon = 1e-4),
            other => panic!("expected slant helix, got {other:?}"),
        }

        let generic = IntrinsicProfile::new(
            Arc::new(1.0),
            Arc::new(FieldFn(|s: f64| s)),
            interval(0.0, 2.0),
        )
        .unwrap();
        assert_eq!(classify(&generic, 1e-6).unwrap(), HelixClass::Generic);
    }

    #[test]
    fn classify_scaled_curvature_general_helices() {
        for &m in &[-3.0, -1.0, -0.25, 0.25, 1.0, 3.0] {
            let kappa = FieldFn(|s: f64| 1.0 + 0.3 * s.sin());
            let tau = FieldFn(move |s: f64| m * (1.0 + 0.3 * s.sin()));
            let p = IntrinsicProfile::new(Arc::new(kappa), Arc::new(tau), interval(0.0, 2.0))
                .unwrap();
            match classify(&p, 1e-6).unwrap() {
                HelixClass::GeneralHelix(got) => assert_relative_eq!(got, m, epsilon = 1e-6),
                other => panic!("m = {m}: expected general helix, got {other:?}"),
            }
        }
    }
}
