//! `curveforge` command-line front-end.
//!
//! Subcommands cover the full pipeline: `reconstruct` a curve from κ/τ
//! formulas, run the `oracle` Frenet-Serret integration, generate `helix`
//! curves, `classify` a profile, `verify` a reconstruction against its own
//! inputs, and `compare` the two pipelines. Curves are written as CSV,
//! reports as JSON.
//!
//! Exit codes: 0 success, 2 command-line misuse, 3 parse/domain errors in
//! the inputs, 4 numerical failures (chart boundary without `--restart`,
//! restart limit, degenerate estimates), 1 I/O failures.

mod cli;
mod commands;
mod csv;
mod report;

use std::process::ExitCode;

use clap::Parser;

use curveforge::Error as CoreError;

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes (`curveforge ... | head`)
    #[cfg(unix)]
    // SAFETY: resetting SIGPIPE to the default disposition before any
    // threads exist has no other effect on the process
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    let args = cli::Cli::parse();
    match commands::run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("curveforge: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

/// Failure with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn numerical(message: String) -> Self {
        CliError { code: 4, message }
    }

    pub fn io(stage: &str, err: std::io::Error) -> Self {
        CliError {
            code: 1,
            message: format!("{stage}: {err}"),
        }
    }
}

/// Maps a core error to the documented exit code, prefixed with the stage
/// that failed.
pub fn core_error(stage: &'static str) -> impl Fn(CoreError) -> CliError {
    move |err| {
        let code = match err {
            CoreError::Parse(_)
            | CoreError::Eval(_)
            | CoreError::InvalidDomain { .. }
            | CoreError::InvalidProfile { .. }
            | CoreError::InitialCondition { .. }
            | CoreError::ChartBoundary { .. }
            | CoreError::SlantChart { .. }
            | CoreError::InvalidParameter(_) => 3,
            CoreError::NegativeRadicand { .. }
            | CoreError::Pole { .. }
            | CoreError::GridMismatch(_)
            | CoreError::DegenerateCurvature { .. }
            | CoreError::RestartLimit { .. } => 4,
        };
        CliError {
            code,
            message: format!("{stage}: {err}"),
        }
    }
}
