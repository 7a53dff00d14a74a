//! Command implementations.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use curveforge::frenet::{
    estimate_kappa_tau, frenet_integrate, initial_conditions_from_frame, kabsch_align,
};
use curveforge::helices::{classify, general_helix, slant_helix};
use curveforge::ode::{Direction, TorsionSign};
use curveforge::profile::{IntrinsicProfile, Interval};
use curveforge::reconstruct::{reconstruct, ReconstructEvent, ReconstructOptions, Reconstruction};
use curveforge::{FrenetFrame, HelixClass, ScalarExpr, Vector3};

use crate::cli::{
    ClassifyArgs, Cli, Command, CompareArgs, HelixArgs, HelixCommand, OracleArgs, ProfileArgs,
    ReconstructArgs, VerifyArgs,
};
use crate::report::{EventRecord, Inputs, Metrics, RunReport};
use crate::{core_error, CliError};

pub fn run(args: Cli) -> Result<(), CliError> {
    match args.command {
        Command::Reconstruct(a) => run_reconstruct(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Helix(HelixCommand::General(a)) => run_helix_general(a),
        Command::Helix(HelixCommand::Slant(a)) => run_helix_slant(a),
        Command::Classify(a) => run_classify(a),
        Command::Verify(a) => run_verify(a),
        Command::Compare(a) => run_compare(a),
    }
}

/// Parses a comma/whitespace-separated list of exactly `n` reals.
fn parse_reals(what: &str, text: &str, n: usize) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .collect();
    if parts.len() != n {
        return Err(CliError {
            code: 2,
            message: format!("{what}: expected {n} comma-separated reals, got {}", parts.len()),
        });
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<f64>().map_err(|_| CliError {
                code: 2,
                message: format!("{what}: `{p}` is not a number"),
            })
        })
        .collect()
}

fn parse_frame(text: &str) -> Result<FrenetFrame, CliError> {
    let v = parse_reals("--frame", text, 9)?;
    Ok(FrenetFrame::new(
        Vector3::new(v[0], v[1], v[2]),
        Vector3::new(v[3], v[4], v[5]),
        Vector3::new(v[6], v[7], v[8]),
    ))
}

fn parse_point(what: &str, text: &str) -> Result<Vector3<f64>, CliError> {
    let v = parse_reals(what, text, 3)?;
    Ok(Vector3::new(v[0], v[1], v[2]))
}

fn parse_formula(what: &'static str, text: &str) -> Result<ScalarExpr, CliError> {
    ScalarExpr::parse(text).map_err(|e| core_error(what)(e.into()))
}

fn build_profile(
    kappa: &str,
    tau: &str,
    smin: f64,
    smax: f64,
) -> Result<IntrinsicProfile, CliError> {
    let kappa = parse_formula("parse --kappa", kappa)?;
    let tau = parse_formula("parse --tau", tau)?;
    let domain = Interval::new(smin, smax).map_err(core_error("domain"))?;
    IntrinsicProfile::new(Arc::new(kappa), Arc::new(tau), domain)
        .map_err(core_error("profile validation"))
}

fn profile_of(args: &ProfileArgs) -> Result<IntrinsicProfile, CliError> {
    build_profile(&args.kappa, &args.tau, args.smin, args.smax)
}

/// Fails with exit code 4 when the reconstruction stopped at a chart
/// boundary and restarts were not enabled.
fn reject_unhandled_exit(rec: &Reconstruction, restart: bool) -> Result<(), CliError> {
    if restart {
        return Ok(());
    }
    if let Some(ReconstructEvent::DomainExit { s_exit, .. }) = rec
        .events
        .iter()
        .find(|e| matches!(e, ReconstructEvent::DomainExit { .. }))
    {
        return Err(CliError::numerical(format!(
            "reconstruct: chart boundary at s = {s_exit}; rerun with --restart to continue \
             past it"
        )));
    }
    Ok(())
}

fn run_reconstruct(args: ReconstructArgs) -> Result<(), CliError> {
    let profile = profile_of(&args.profile)?;
    let start = parse_point("--start", &args.start)?;

    let (w0, v0, sign) = match &args.frame {
        Some(text) => {
            let frame = parse_frame(text)?;
            let kappa0 = profile.kappa(args.s0).map_err(core_error("profile"))?;
            let (w0, v0) = initial_conditions_from_frame(&frame, kappa0)
                .map_err(core_error("initial conditions from frame"))?;
            let sign = if frame.binormal.z >= 0.0 {
                TorsionSign::Positive
            } else {
                TorsionSign::Negative
            };
            (w0, v0, sign)
        }
        None => (args.w0, args.v0, TorsionSign::Positive),
    };

    let opts = ReconstructOptions {
        step: args.step,
        direction: args.direction.to_core(),
        sign,
        restart: args.restart,
        max_restarts: args.max_restarts,
        ..ReconstructOptions::default()
    };
    let rec = reconstruct(&profile, args.s0, w0, v0, start, &opts)
        .map_err(core_error("reconstruct"))?;
    reject_unhandled_exit(&rec, args.restart)?;

    crate::csv::write_curve(&args.out, &rec.curve, args.frames)?;
    println!("wrote {} samples to {}", rec.curve.len(), args.out.display());
    for event in &rec.events {
        match event {
            ReconstructEvent::DomainExit { s_exit, radicand, .. } => {
                println!("chart exit at s = {s_exit} (radicand {radicand:.3e})")
            }
            ReconstructEvent::Restart { s, .. } => println!("chart restart at s = {s}"),
        }
    }
    Ok(())
}

fn run_oracle(args: OracleArgs) -> Result<(), CliError> {
    let profile = profile_of(&args.profile)?;
    let frame = parse_frame(&args.frame)?;
    let p0 = parse_point("--p0", &args.p0)?;
    let curve = frenet_integrate(
        &profile,
        args.s0,
        &frame,
        p0,
        args.step,
        args.direction.to_core(),
    )
    .map_err(core_error("oracle"))?;
    crate::csv::write_curve(&args.out, &curve, args.frames)?;
    println!("wrote {} samples to {}", curve.len(), args.out.display());
    Ok(())
}

fn run_helix_general(args: HelixArgs) -> Result<(), CliError> {
    let kappa = parse_formula("parse --kappa", &args.kappa)?;
    let domain = Interval::new(args.smin, args.smax).map_err(core_error("domain"))?;
    let curve = general_helix(args.m, &kappa, domain, args.step)
        .map_err(core_error("helix general"))?;
    crate::csv::write_curve(&args.out, &curve, args.frames)?;
    println!("wrote {} samples to {}", curve.len(), args.out.display());
    Ok(())
}

fn run_helix_slant(args: HelixArgs) -> Result<(), CliError> {
    let kappa = parse_formula("parse --kappa", &args.kappa)?;
    let domain = Interval::new(args.smin, args.smax).map_err(core_error("domain"))?;
    let out = slant_helix(args.m, Arc::new(kappa), domain, args.step)
        .map_err(core_error("helix slant"))?;
    crate::csv::write_curve(&args.out, &out.curve, args.frames)?;
    println!(
        "wrote {} samples to {}",
        out.curve.len(),
        args.out.display()
    );
    println!(
        "slant cross-check rmsd {:.3e} ({})",
        out.validation_rmsd,
        if out.y_flipped {
            "y sign branch flipped"
        } else {
            "y sign branch kept"
        }
    );
    Ok(())
}

fn run_classify(args: ClassifyArgs) -> Result<(), CliError> {
    let profile = build_profile(&args.kappa, &args.tau, args.smin, args.smax)?;
    let class = classify(&profile, args.tol).map_err(core_error("classify"))?;
    match class {
        HelixClass::GeneralHelix(m) => println!("general-helix m={m}"),
        HelixClass::SlantHelix(m) => println!("slant-helix m={m}"),
        HelixClass::Generic => println!("generic"),
    }
    Ok(())
}

/// One verification item: a profile plus initial data.
struct VerifyItem {
    kappa: String,
    tau: String,
    smin: f64,
    smax: f64,
    s0: f64,
    w0: f64,
    v0: f64,
}

fn verify_one(item: &VerifyItem, step: f64, restart: bool) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let profile = build_profile(&item.kappa, &item.tau, item.smin, item.smax)?;
    let opts = ReconstructOptions {
        step,
        restart,
        ..ReconstructOptions::default()
    };
    let rec = reconstruct(&profile, item.s0, item.w0, item.v0, Vector3::zeros(), &opts)
        .map_err(core_error("reconstruct"))?;
    reject_unhandled_exit(&rec, restart)?;

    let est = estimate_kappa_tau(&rec.curve).map_err(core_error("estimate"))?;
    let mut max_kappa_rel = 0.0f64;
    let mut max_tau_abs = 0.0f64;
    // skip 2 more samples per side on top of the estimator's 3
    for j in 2..est.len().saturating_sub(2) {
        let s = est.s[j];
        let kappa = profile.kappa(s).map_err(core_error("profile"))?;
        let tau = profile.tau(s).map_err(core_error("profile"))?;
        max_kappa_rel = max_kappa_rel.max((est.kappa[j] - kappa).abs() / kappa);
        max_tau_abs = max_tau_abs.max((est.tau[j] - tau).abs());
    }

    Ok(RunReport {
        inputs: Inputs {
            command: "verify",
            kappa: item.kappa.clone(),
            tau: item.tau.clone(),
            smin: item.smin,
            smax: item.smax,
            s0: item.s0,
            w0: item.w0,
            v0: item.v0,
            step,
            direction: "forward".to_string(),
            restart,
        },
        metrics: Metrics {
            max_kappa_rel_err: Some(max_kappa_rel),
            max_tau_abs_err: Some(max_tau_abs),
            unit_speed_dev: Some(rec.curve.max_unit_speed_deviation()),
            ..Metrics::default()
        },
        events: rec.events.iter().map(EventRecord::from).collect(),
        timing_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

/// Random verification profiles: κ = 1 + a·sin(ωs), τ = c over [0, 2],
/// seeded by CURVEFORGE_SEED (default 0) for reproducibility.
fn random_items(count: usize) -> Vec<VerifyItem> {
    let seed = std::env::var("CURVEFORGE_SEED")
        .ok()
        .and_then(|v| v.parse::<u64>().ok())
        .unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a: f64 = rng.gen_range(0.0..0.5);
            let omega: f64 = rng.gen_range(0.5..2.0);
            let c: f64 = rng.gen_range(-1.0..1.0);
            VerifyItem {
                kappa: format!("1+{a:?}*sin({omega:?}*s)"),
                tau: format!("{c:?}"),
                smin: 0.0,
                smax: 2.0,
                s0: 0.0,
                w0: 0.0,
                v0: 0.0,
            }
        })
        .collect()
}

/// Batch file: one profile per line, `kappa ; tau ; smin ; smax`, with `#`
/// comments and blank lines ignored.
fn batch_items(path: &str) -> Result<Vec<VerifyItem>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(&format!("read {path}"), e))?;
    let mut items = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(CliError {
                code: 2,
                message: format!(
                    "{path}:{}: expected `kappa ; tau ; smin ; smax`",
                    lineno + 1
                ),
            });
        }
        let parse_bound = |what: &str, text: &str| -> Result<f64, CliError> {
            text.parse::<f64>().map_err(|_| CliError {
                code: 2,
                message: format!("{path}:{}: {what} `{text}` is not a number", lineno + 1),
            })
        };
        let smin = parse_bound("smin", fields[2])?;
        let smax = parse_bound("smax", fields[3])?;
        items.push(VerifyItem {
            kappa: fields[0].to_string(),
            tau: fields[1].to_string(),
            smin,
            smax,
            s0: smin,
            w0: 0.0,
            v0: 0.0,
        });
    }
    Ok(items)
}

fn run_verify(args: VerifyArgs) -> Result<(), CliError> {
    if let Some(batch) = &args.batch {
        let items = match batch.strip_prefix("random:") {
            Some(count) => {
                let count: usize = count.parse().map_err(|_| CliError {
                    code: 2,
                    message: format!("--batch: `{count}` is not a count"),
                })?;
                random_items(count)
            }
            None => batch_items(batch)?,
        };
        // profiles are independent; reports come back in input order
        let reports: Result<Vec<RunReport>, CliError> = items
            .par_iter()
            .map(|item| verify_one(item, args.step, args.restart))
            .collect();
        return emit_json(&reports?, args.out.as_deref());
    }

    let item = VerifyItem {
        kappa: args.kappa.clone().expect("required by clap"),
        tau: args.tau.clone().expect("required by clap"),
        smin: args.smin.expect("required by clap"),
        smax: args.smax.expect("required by clap"),
        s0: args.s0.unwrap_or_else(|| args.smin.expect("required")),
        w0: args.w0,
        v0: args.v0,
    };
    let report = verify_one(&item, args.step, args.restart)?;
    emit_json(&report, args.out.as_deref())
}

fn run_compare(args: CompareArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let profile = profile_of(&args.profile)?;
    let s0 = args.s0.unwrap_or(args.profile.smin);
    let opts = ReconstructOptions {
        step: args.step,
        restart: args.restart,
        ..ReconstructOptions::default()
    };
    let rec = reconstruct(&profile, s0, args.w0, args.v0, Vector3::zeros(), &opts)
        .map_err(core_error("reconstruct"))?;
    reject_unhandled_exit(&rec, args.restart)?;

    let frames = rec.curve.frames.as_ref().expect("reconstruct attaches frames");
    let oracle = frenet_integrate(
        &profile,
        s0,
        &frames[rec.origin],
        rec.curve.positions[rec.origin],
        args.step,
        Direction::Forward,
    )
    .map_err(core_error("oracle"))?;
    let (_, rmsd) = kabsch_align(&rec.curve, &oracle).map_err(core_error("kabsch"))?;

    let report = RunReport {
        inputs: Inputs {
            command: "compare",
            kappa: args.profile.kappa.clone(),
            tau: args.profile.tau.clone(),
            smin: args.profile.smin,
            smax: args.profile.smax,
            s0,
            w0: args.w0,
            v0: args.v0,
            step: args.step,
            direction: "forward".to_string(),
            restart: args.restart,
        },
        metrics: Metrics {
            oracle_rmsd: Some(rmsd),
            unit_speed_dev: Some(rec.curve.max_unit_speed_deviation()),
            ..Metrics::default()
        },
        events: rec.events.iter().map(EventRecord::from).collect(),
        timing_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    emit_json(&report, args.out.as_deref())
}

fn emit_json<T: serde::Serialize>(
    value: &T,
    out: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(value).map_err(|e| CliError {
        code: 1,
        message: format!("serialize report: {e}"),
    })?;
    match out {
        Some(path) => {
            std::fs::write(path, json + "\n")
                .map_err(|e| CliError::io(&format!("write {}", path.display()), e))?;
            println!("wrote report to {}", path.display());
        }
        None => println!("{json}"),
    }
    Ok(())
}
