//! Argument definitions.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "curveforge",
    version,
    about = "Reconstruct, generate, and verify space curves from curvature and torsion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Reconstruct a curve from κ(s) and τ(s) formulas.
    Reconstruct(ReconstructArgs),
    /// Integrate the Frenet-Serret system from an explicit initial frame.
    Oracle(OracleArgs),
    /// Generate helices from their closed forms.
    #[command(subcommand)]
    Helix(HelixCommand),
    /// Classify a profile as a general helix, slant helix, or generic.
    Classify(ClassifyArgs),
    /// Reconstruct, re-estimate κ/τ, and report the round-trip errors.
    Verify(VerifyArgs),
    /// Reconstruct and compare against the Frenet-Serret oracle.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum DirectionArg {
    Forward,
    Backward,
    Both,
}

impl DirectionArg {
    pub fn to_core(self) -> curveforge::Direction {
        match self {
            DirectionArg::Forward => curveforge::Direction::Forward,
            DirectionArg::Backward => curveforge::Direction::Backward,
            DirectionArg::Both => curveforge::Direction::Both,
        }
    }
}

/// Flags shared by every command that consumes a κ/τ profile.
#[derive(Args)]
pub struct ProfileArgs {
    /// Curvature formula of `s` (must stay positive on the domain).
    #[arg(long)]
    pub kappa: String,
    /// Torsion formula of `s`.
    #[arg(long)]
    pub tau: String,
    /// Left end of the arc-length domain.
    #[arg(long, allow_negative_numbers = true)]
    pub smin: f64,
    /// Right end of the arc-length domain.
    #[arg(long, allow_negative_numbers = true)]
    pub smax: f64,
}

#[derive(Args)]
pub struct ReconstructArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// Arc length of the initial data.
    #[arg(long, allow_negative_numbers = true)]
    pub s0: f64,
    /// Initial tangent component ⟨t, e₃⟩.
    #[arg(long, conflicts_with = "frame", default_value_t = 0.0, allow_negative_numbers = true)]
    pub w0: f64,
    /// Initial derivative w′(s0).
    #[arg(long, conflicts_with = "frame", default_value_t = 0.0, allow_negative_numbers = true)]
    pub v0: f64,
    /// Initial frame as 9 comma-separated reals (t, n, b rows); replaces
    /// --w0/--v0.
    #[arg(long, value_name = "9 REALS", allow_hyphen_values = true)]
    pub frame: Option<String>,
    /// Start position as 3 comma-separated reals.
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    pub start: String,
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
    pub direction: DirectionArg,
    /// Continue past chart exits by restarting in a rotated chart.
    #[arg(long)]
    pub restart: bool,
    #[arg(long, default_value_t = 16)]
    pub max_restarts: usize,
    /// Append frame columns to the CSV.
    #[arg(long)]
    pub frames: bool,
    /// Output CSV path.
    #[arg(long)]
    pub out: std::path::PathBuf,
}

#[derive(Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub s0: f64,
    /// Initial frame as 9 comma-separated reals (t, n, b rows).
    #[arg(long, value_name = "9 REALS", allow_hyphen_values = true)]
    pub frame: String,
    /// Initial position as 3 comma-separated reals.
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    pub p0: String,
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
    pub direction: DirectionArg,
    #[arg(long)]
    pub frames: bool,
    #[arg(long)]
    pub out: std::path::PathBuf,
}

#[derive(Subcommand)]
pub enum HelixCommand {
    /// Constant-slope helix: τ/κ ≡ m.
    General(HelixArgs),
    /// Slant helix: σ ≡ m (requires m ≠ 0).
    Slant(HelixArgs),
}

#[derive(Args)]
pub struct HelixArgs {
    /// Helix invariant m.
    #[arg(long, allow_negative_numbers = true)]
    pub m: f64,
    /// Curvature formula of `s`.
    #[arg(long)]
    pub kappa: String,
    #[arg(long, allow_negative_numbers = true)]
    pub smin: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub smax: f64,
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    pub step: f64,
    #[arg(long)]
    pub frames: bool,
    #[arg(long)]
    pub out: std::path::PathBuf,
}

#[derive(Args)]
pub struct ClassifyArgs {
    /// Curvature formula of `s`.
    #[arg(long)]
    pub kappa: String,
    /// Torsion formula of `s`.
    #[arg(long)]
    pub tau: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub smin: f64,
    #[arg(long, default_value_t = std::f64::consts::TAU, allow_negative_numbers = true)]
    pub smax: f64,
    /// Relative constancy threshold.
    #[arg(long, default_value_t = 1e-6, allow_negative_numbers = true)]
    pub tol: f64,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Curvature formula (unused with --batch).
    #[arg(long, required_unless_present = "batch")]
    pub kappa: Option<String>,
    /// Torsion formula (unused with --batch).
    #[arg(long, required_unless_present = "batch")]
    pub tau: Option<String>,
    #[arg(long, required_unless_present = "batch", allow_negative_numbers = true)]
    pub smin: Option<f64>,
    #[arg(long, required_unless_present = "batch", allow_negative_numbers = true)]
    pub smax: Option<f64>,
    /// Arc length of the initial data (defaults to smin).
    #[arg(long, allow_negative_numbers = true)]
    pub s0: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub w0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub v0: f64,
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    pub step: f64,
    #[arg(long)]
    pub restart: bool,
    /// Batch mode: a profile-list file, or `random:N` for N seeded random
    /// profiles (seed from CURVEFORGE_SEED).
    #[arg(long)]
    pub batch: Option<String>,
    /// Report path (stdout when omitted).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub s0: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub w0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub v0: f64,
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    pub step: f64,
    #[arg(long)]
    pub restart: bool,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}
