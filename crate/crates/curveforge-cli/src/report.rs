//! JSON run reports.
//!
//! A report is a single object with `inputs` (a re-runnable echo of the
//! command), `metrics`, `events`, and `timing_ms`. Batch verification emits
//! an array of these objects in input order.

use serde::Serialize;

use curveforge::ode::Direction;
use curveforge::reconstruct::ReconstructEvent;

#[derive(Serialize)]
pub struct RunReport {
    pub inputs: Inputs,
    pub metrics: Metrics,
    pub events: Vec<EventRecord>,
    pub timing_ms: f64,
}

#[derive(Serialize)]
pub struct Inputs {
    pub command: &'static str,
    pub kappa: String,
    pub tau: String,
    pub smin: f64,
    pub smax: f64,
    pub s0: f64,
    pub w0: f64,
    pub v0: f64,
    pub step: f64,
    pub direction: String,
    pub restart: bool,
}

#[derive(Serialize, Default)]
pub struct Metrics {
    /// Max interior |κ̂ - κ| / κ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_kappa_rel_err: Option<f64>,
    /// Max interior |τ̂ - τ|.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_tau_abs_err: Option<f64>,
    /// Kabsch RMSD against the Frenet-Serret oracle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_rmsd: Option<f64>,
    /// Max deviation of the centered-difference speed from 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_speed_dev: Option<f64>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EventRecord {
    DomainExit {
        direction: &'static str,
        s_exit: f64,
        radicand: f64,
    },
    Restart {
        direction: &'static str,
        s: f64,
    },
}

fn direction_label(direction: Direction) -> &'static str {
    match direction {
        Direction::Forward => "forward",
        Direction::Backward => "backward",
        Direction::Both => "both",
    }
}

impl From<&ReconstructEvent> for EventRecord {
    fn from(event: &ReconstructEvent) -> Self {
        match *event {
            ReconstructEvent::DomainExit {
                direction,
                s_exit,
                radicand,
            } => EventRecord::DomainExit {
                direction: direction_label(direction),
                s_exit,
                radicand,
            },
            ReconstructEvent::Restart { direction, s } => EventRecord::Restart {
                direction: direction_label(direction),
                s,
            },
        }
    }
}
