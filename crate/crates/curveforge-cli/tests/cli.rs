//! End-to-end tests of the `curveforge` binary: output formats, exit codes,
//! and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_curveforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn curveforge")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read_rows(path: &Path) -> Vec<Vec<f64>> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("s,x,y,z"));
    lines
        .map(|line| {
            line.split(',')
                .map(|v| v.parse::<f64>().expect("numeric CSV cell"))
                .collect()
        })
        .collect()
}

#[test]
fn classify_prints_the_general_helix_line() {
    let out = run(&["classify", "--kappa", "1", "--tau", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "general-helix m=1");

    let out = run(&["classify", "--kappa", "1", "--tau", "s", "--smin", "0", "--smax", "2"]);
    assert_eq!(stdout(&out).trim(), "generic");
}

#[test]
fn reconstructed_circle_closes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("circle.csv");
    let out = run(&[
        "reconstruct",
        "--kappa", "1",
        "--tau", "0",
        "--smin", "0",
        "--smax", "6.2832",
        "--s0", "0",
        "--w0", "0",
        "--v0", "0",
        "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let rows = read_rows(&csv);
    let first = &rows[0];
    let last = &rows[rows.len() - 1];
    let gap = ((last[1] - first[1]).powi(2)
        + (last[2] - first[2]).powi(2)
        + (last[3] - first[3]).powi(2))
    .sqrt();
    assert!(gap <= 1e-4, "closure gap {gap}");
}

#[test]
fn csv_is_deterministic_and_finite() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "reconstruct",
            "--kappa", "1+0.3*sin(s)",
            "--tau", "0.5",
            "--smin", "0",
            "--smax", "2",
            "--s0", "0",
            "--frames",
            "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b, "identical argv must give identical bytes");

    let text = String::from_utf8(bytes_a).unwrap();
    let lower = text.to_lowercase();
    assert!(!lower.contains("nan") && !lower.contains("inf"));
    assert!(text.lines().next().unwrap().ends_with("bx,by,bz"));
}

#[test]
fn exit_codes_name_the_failing_stage() {
    // 2: command-line misuse
    let out = run(&["reconstruct", "--kappa", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // 3: expression syntax error
    let out = run(&["classify", "--kappa", "2s", "--tau", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("parse --kappa"));

    // 3: curvature must stay positive
    let out = run(&[
        "classify", "--kappa", "sin(s)", "--tau", "1", "--smin", "0", "--smax", "6.0",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("profile validation"));

    // 3: initial data outside the admissible ellipse
    let out = run(&[
        "reconstruct",
        "--kappa", "1",
        "--tau", "0",
        "--smin", "0",
        "--smax", "2",
        "--s0", "0",
        "--w0", "1.5",
        "--v0", "0",
        "--out", "/dev/null",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("reconstruct"));

    // 4: chart boundary without --restart, resolved by --restart
    let boundary = [
        "reconstruct",
        "--kappa", "1",
        "--tau", "5",
        "--smin", "0",
        "--smax", "2",
        "--s0", "0",
        "--w0", "0.9",
        "--v0", "0",
    ];
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("stitched.csv");
    let mut args = boundary.to_vec();
    args.extend(["--out", csv.to_str().unwrap()]);
    let out = run(&args);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("chart boundary"));

    let mut args = boundary.to_vec();
    args.extend(["--restart", "--out", csv.to_str().unwrap()]);
    let out = run(&args);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("chart restart"));
    let text = std::fs::read_to_string(&csv).unwrap().to_lowercase();
    assert!(!text.contains("nan"));
}

#[test]
fn verify_reports_round_trip_errors() {
    let out = run(&[
        "verify",
        "--kappa", "1+0.3*sin(s)",
        "--tau", "0.5",
        "--smin", "0",
        "--smax", "2",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in ["inputs", "metrics", "events", "timing_ms"] {
        assert!(report.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(report["inputs"]["kappa"], "1+0.3*sin(s)");
    assert!(report["metrics"]["max_kappa_rel_err"].as_f64().unwrap() <= 1e-3);
    assert!(report["metrics"]["max_tau_abs_err"].as_f64().unwrap() <= 1e-3);
}

#[test]
fn compare_reports_the_oracle_rmsd() {
    let out = run(&[
        "compare",
        "--kappa", "1",
        "--tau", "1",
        "--smin", "0",
        "--smax", "2",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["metrics"]["oracle_rmsd"].as_f64().unwrap() <= 1e-5);
}

#[test]
fn seeded_batches_are_reproducible_and_ordered() {
    let first = bin()
        .args(["verify", "--batch", "random:3"])
        .env("CURVEFORGE_SEED", "11")
        .output()
        .unwrap();
    let second = bin()
        .args(["verify", "--batch", "random:3"])
        .env("CURVEFORGE_SEED", "11")
        .output()
        .unwrap();
    assert!(first.status.success());
    let a: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&second)).unwrap();
    assert_eq!(a.as_array().unwrap().len(), 3);
    for i in 0..3 {
        assert_eq!(a[i]["inputs"], b[i]["inputs"]);
        assert_eq!(a[i]["metrics"], b[i]["metrics"]);
    }

    let other = bin()
        .args(["verify", "--batch", "random:3"])
        .env("CURVEFORGE_SEED", "12")
        .output()
        .unwrap();
    let c: serde_json::Value = serde_json::from_str(&stdout(&other)).unwrap();
    assert_ne!(a[0]["inputs"]["kappa"], c[0]["inputs"]["kappa"]);
}

#[test]
fn batch_file_order_matches_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("profiles.txt");
    std::fs::write(
        &list,
        "# two distinguishable profiles\n1 ; 0.25 ; 0 ; 2\n1+0.2*sin(s) ; -0.5 ; 0 ; 2\n",
    )
    .unwrap();
    let out = run(&["verify", "--batch", list.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(reports[0]["inputs"]["tau"], "0.25");
    assert_eq!(reports[1]["inputs"]["tau"], "-0.5");
}

#[test]
fn oracle_accepts_an_explicit_frame() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("oracle.csv");
    let out = run(&[
        "oracle",
        "--kappa", "1",
        "--tau", "0",
        "--smin", "0",
        "--smax", "6.2832",
        "--s0", "0",
        "--frame", "1,0,0,0,1,0,0,0,1",
        "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let rows = read_rows(&csv);
    let last = &rows[rows.len() - 1];
    let gap = (last[1].powi(2) + last[2].powi(2) + last[3].powi(2)).sqrt();
    assert!(gap <= 1e-4, "closure gap {gap}");
}

#[test]
fn helix_commands_write_curves() {
    let dir = tempfile::tempdir().unwrap();
    let general = dir.path().join("general.csv");
    let out = run(&[
        "helix", "general",
        "--m", "1",
        "--kappa", "1",
        "--smin", "0",
        "--smax", "2",
        "--out", general.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let rows = read_rows(&general);
    let slope = (rows[1][3] - rows[0][3]) / (rows[1][0] - rows[0][0]);
    assert!((slope - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-9);

    let slant = dir.path().join("slant.csv");
    let out = run(&[
        "helix", "slant",
        "--m", "0.5",
        "--kappa", "1",
        "--smin", "-1.9",
        "--smax", "1.9",
        "--out", slant.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("y sign branch kept"));

    // slant chart must end inside |m·∫κ| < 1
    let out = run(&[
        "helix", "slant",
        "--m", "0.5",
        "--kappa", "1",
        "--smin", "0",
        "--smax", "2.5",
        "--out", slant.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}
