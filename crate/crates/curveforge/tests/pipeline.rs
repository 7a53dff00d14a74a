//! Cross-module checks: the scalar reconstruction against the independent
//! Frenet-Serret route, scalar initial conditions derived from frames, and
//! chart restarts validated through the oracle.

use std::sync::Arc;

use curveforge::frenet::{
    estimate_kappa_tau, frenet_integrate, initial_conditions_from_frame, kabsch_align,
};
use curveforge::ode::{Direction, TorsionSign};
use curveforge::profile::{FieldFn, IntrinsicProfile, Interval, ScalarField};
use curveforge::reconstruct::{reconstruct, ReconstructOptions};
use curveforge::{FrenetFrame, Vector3};

fn profile(
    kappa: impl ScalarField + 'static,
    tau: impl ScalarField + 'static,
    lo: f64,
    hi: f64,
) -> IntrinsicProfile {
    IntrinsicProfile::new(
        Arc::new(kappa),
        Arc::new(tau),
        Interval::new(lo, hi).unwrap(),
    )
    .unwrap()
}

/// Runs both routes from matched initial data and returns the aligned RMSD.
fn oracle_rmsd(p: &IntrinsicProfile, s0: f64, w0: f64, v0: f64, opts: &ReconstructOptions) -> f64 {
    let rec = reconstruct(p, s0, w0, v0, Vector3::zeros(), opts).unwrap();
    let frames = rec.curve.frames.as_ref().unwrap();
    let oracle = frenet_integrate(
        p,
        s0,
        &frames[rec.origin],
        rec.curve.positions[rec.origin],
        opts.step,
        opts.direction,
    )
    .unwrap();
    let (_, rmsd) = kabsch_align(&rec.curve, &oracle).unwrap();
    rmsd
}

#[test]
fn reconstruction_matches_oracle_for_varying_curvature() {
    let p = profile(
        FieldFn(|s: f64| 1.0 + 0.3 * s.sin()),
        0.4,
        0.0,
        2.0,
    );
    let rmsd = oracle_rmsd(&p, 0.0, 0.0, 0.0, &ReconstructOptions::default());
    assert!(rmsd <= 1e-5, "rmsd {rmsd}");
}

#[test]
fn reconstruction_matches_oracle_in_both_directions() {
    let p = profile(
        FieldFn(|s: f64| 1.0 + 0.2 * (0.7 * s).cos()),
        FieldFn(|s: f64| 0.3 * s),
        -1.0,
        1.0,
    );
    let opts = ReconstructOptions {
        direction: Direction::Both,
        ..ReconstructOptions::default()
    };
    let rmsd = oracle_rmsd(&p, 0.0, 0.1, -0.2, &opts);
    assert!(rmsd <= 1e-5, "rmsd {rmsd}");
}

#[test]
fn frame_started_curve_is_recovered_from_scalar_data() {
    // integrate the frame route from a tilted initial frame, then rebuild
    // the same curve from the scalar initial conditions that frame induces
    let p = profile(FieldFn(|s: f64| 1.0 + 0.2 * s.sin()), 0.3, 0.0, 2.0);
    let (sin_a, cos_a) = (0.4f64.sin(), 0.4f64.cos());
    let frame0 = FrenetFrame::new(
        Vector3::x(),
        Vector3::new(0.0, cos_a, sin_a),
        Vector3::new(0.0, -sin_a, cos_a),
    );
    let oracle = frenet_integrate(&p, 0.0, &frame0, Vector3::zeros(), 1e-3, Direction::Forward)
        .unwrap();

    let (w0, v0) = initial_conditions_from_frame(&frame0, p.kappa(0.0).unwrap()).unwrap();
    let rec = reconstruct(
        &p,
        0.0,
        w0,
        v0,
        Vector3::zeros(),
        &ReconstructOptions::default(),
    )
    .unwrap();
    let (_, rmsd) = kabsch_align(&rec.curve, &oracle).unwrap();
    assert!(rmsd <= 1e-5, "rmsd {rmsd}");
}

#[test]
fn negative_branch_reproduces_the_intrinsic_data() {
    let p = profile(1.0, 0.8, 0.0, 2.0);
    let opts = ReconstructOptions {
        sign: TorsionSign::Negative,
        ..ReconstructOptions::default()
    };
    let rec = reconstruct(&p, 0.0, 0.0, 0.0, Vector3::zeros(), &opts).unwrap();
    let est = estimate_kappa_tau(&rec.curve).unwrap();
    for (k, t) in est.kappa.iter().zip(&est.tau) {
        assert!((k - 1.0).abs() <= 1e-3, "kappa {k}");
        assert!((t - 0.8).abs() <= 1e-3, "tau {t}");
    }
}

#[test]
fn restart_stitched_curve_matches_the_oracle() {
    let p = profile(1.0, 5.0, 0.0, 2.0);
    let opts = ReconstructOptions {
        restart: true,
        ..ReconstructOptions::default()
    };
    let rec = reconstruct(&p, 0.0, 0.9, 0.0, Vector3::zeros(), &opts).unwrap();
    assert_eq!(*rec.curve.s.last().unwrap(), 2.0);

    let frames = rec.curve.frames.as_ref().unwrap();
    let oracle = frenet_integrate(
        &p,
        0.0,
        &frames[rec.origin],
        rec.curve.positions[rec.origin],
        1e-3,
        Direction::Forward,
    )
    .unwrap();
    let (_, rmsd) = kabsch_align(&rec.curve, &oracle).unwrap();
    assert!(rmsd <= 1e-4, "stitched rmsd {rmsd}");
}

#[test]
fn backward_restart_chain_matches_the_oracle() {
    let p = profile(1.0, 5.0, -2.0, 2.0);
    let opts = ReconstructOptions {
        direction: Direction::Both,
        restart: true,
        ..ReconstructOptions::default()
    };
    let rec = reconstruct(&p, 0.0, 0.9, 0.0, Vector3::zeros(), &opts).unwrap();
    let rmsd = {
        let frames = rec.curve.frames.as_ref().unwrap();
        let oracle = frenet_integrate(
            &p,
            0.0,
            &frames[rec.origin],
            rec.curve.positions[rec.origin],
            1e-3,
            Direction::Both,
        )
        .unwrap();
        kabsch_align(&rec.curve, &oracle).unwrap().1
    };
    assert!(rmsd <= 1e-4, "two-sided stitched rmsd {rmsd}");
}
