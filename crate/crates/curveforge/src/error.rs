//! Error types shared across the crate.

use alloc::string::String;
use core::fmt;

use crate::expr::ParseError;

/// Evaluation failure of a scalar formula or field at a specific argument.
///
/// Out-of-domain sub-evaluations (square root of a negative number, log of a
/// non-positive number, an overflowing power, ...) are reported through this
/// type instead of quietly propagating NaN or infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalError {
    /// Pretty-printed offending sub-expression, e.g. `sqrt(s)`.
    pub node: String,
    /// Argument value that triggered the failure.
    pub arg: f64,
    /// What went wrong.
    pub reason: &'static str,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "domain error in `{}`: {} (argument {})",
            self.node, self.reason, self.arg
        )
    }
}

impl core::error::Error for EvalError {}

/// Errors produced by the solver, reconstruction, and analysis operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Expression text could not be parsed.
    Parse(ParseError),
    /// A scalar field evaluation left its domain.
    Eval(EvalError),
    /// Interval bounds are not finite or not increasing.
    InvalidDomain { lo: f64, hi: f64 },
    /// Profile validation failed at a sampled point (`what` names the defect).
    InvalidProfile { what: &'static str, s: f64, value: f64 },
    /// Initial data lies on or outside the admissible ellipse
    /// `w² + (v/κ)² < 1`.
    InitialCondition { w0: f64, v0: f64, ellipse: f64 },
    /// The radicand `1 - w² - (v/κ)²` was negative where a square root was
    /// required.
    NegativeRadicand { s: f64, radicand: f64 },
    /// The polar chart degenerated: `1 - ξ²` fell below the pole guard
    /// (tangent nearly parallel to the reference axis).
    Pole { s: f64, xi: f64 },
    /// A frame sits on the chart boundary (`⟨b, e₃⟩ ≈ 0`); the caller should
    /// rotate it before deriving scalar initial conditions.
    ChartBoundary { ellipse: f64 },
    /// Two sampled curves do not share a grid.
    GridMismatch(&'static str),
    /// Curvature is numerically zero at a sample; torsion is undefined there.
    DegenerateCurvature { s: f64 },
    /// The slant-helix chart ended: `|m·∫κ + A| ≥ 1`.
    SlantChart { s: f64, value: f64 },
    /// Reconstruction gave up after the configured number of chart restarts.
    RestartLimit { limit: usize },
    /// A parameter violates a documented precondition.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(e) => write!(f, "parse error: {e}"),
            Error::Eval(e) => write!(f, "evaluation error: {e}"),
            Error::InvalidDomain { lo, hi } => {
                write!(f, "invalid domain [{lo}, {hi}]: bounds must be finite and increasing")
            }
            Error::InvalidProfile { what, s, value } => {
                write!(f, "invalid profile: {what} at s = {s} (value {value})")
            }
            Error::InitialCondition { w0, v0, ellipse } => write!(
                f,
                "initial condition (w0, v0) = ({w0}, {v0}) outside the admissible ellipse \
                 (w0² + (v0/κ)² = {ellipse} must stay below 1)"
            ),
            Error::NegativeRadicand { s, radicand } => {
                write!(f, "negative radicand {radicand} at s = {s}")
            }
            Error::Pole { s, xi } => write!(
                f,
                "polar chart pole at s = {s}: 1 - ξ² is too small (ξ = {xi})"
            ),
            Error::ChartBoundary { ellipse } => write!(
                f,
                "frame lies on the chart boundary (ellipse value {ellipse}); \
                 rotate the frame before deriving initial conditions"
            ),
            Error::GridMismatch(what) => write!(f, "grid mismatch: {what}"),
            Error::DegenerateCurvature { s } => {
                write!(f, "near-zero curvature at s = {s}: torsion estimate undefined")
            }
            Error::SlantChart { s, value } => write!(
                f,
                "slant chart ends at s = {s}: |m·∫κ + A| = {value} reached 1"
            ),
            Error::RestartLimit { limit } => {
                write!(f, "chart restart limit exceeded ({limit} restarts)")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

impl From<EvalError> for Error {
    fn from(e: EvalError) -> Self {
        Error::Eval(e)
    }
}
