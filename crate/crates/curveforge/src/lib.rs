//! Numerical toolkit for space curves given by their intrinsic data.
//!
//! Given a curvature profile `κ(s) > 0` and a torsion profile `τ(s)` over an
//! arc-length interval, this crate reconstructs a curve in `ℝ³` with exactly
//! those invariants, checks the result against an independent Frenet-Serret
//! integration, and generates and classifies general and slant helices from
//! closed forms.
//!
//! # Pipeline
//!
//! The reconstruction avoids the classical nine-equation Frenet system.
//! Writing the unit tangent in polar coordinates, the component
//! `w(s) = ⟨t(s), e₃⟩` satisfies a scalar second-order equation,
//!
//! ```text
//! (w'/κ)' = -κ w + τ √(1 - w² - (w'/κ)²)
//! ```
//!
//! which is integrated by a guarded fixed-step RK4 ([`ode::solve_w`]). The
//! square root confines the state to the open ellipse `w² + (w'/κ)² < 1`;
//! where a trajectory reaches the boundary the solve reports a
//! [`ode::Termination::DomainExit`] instead of producing NaNs. Positions are
//! then recovered by cumulative trapezoid quadrature of the polar integrands
//! ([`reconstruct::position`]), and full Frenet frames come from the polar
//! representation ([`reconstruct::frames_from_w`]).
//!
//! The [`frenet`] module provides the independent cross-check (direct RK4 on
//! the Frenet-Serret system), curvature/torsion estimation from sampled
//! points, and Kabsch alignment for comparisons modulo rigid motion. The
//! [`helices`] module has the closed-form generators and the σ invariant
//! used to classify profiles.
//!
//! # `no_std`
//!
//! The crate is `no_std`-compatible (with `alloc`). Disable default features
//! and enable `libm` to build without the standard library:
//!
//! ```toml
//! curveforge = { version = "0.1", default-features = false, features = ["libm"] }
//! ```
//!
//! All operations are pure functions of their inputs; types are immutable
//! after construction and safe to share across threads.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("curveforge requires either the `std` or the `libm` feature");

mod error;
mod grid;
mod math;

pub mod curve;
pub mod expr;
pub mod frenet;
pub mod helices;
pub mod ode;
pub mod profile;
pub mod reconstruct;

pub use curve::{FrenetFrame, SampledCurve};
pub use error::{Error, EvalError};
pub use expr::{ParseError, ScalarExpr};
pub use frenet::RigidMotion;
pub use helices::HelixClass;
pub use ode::{Direction, Termination, TorsionSign, WSolution, WState};
pub use profile::{FieldFn, IntrinsicProfile, Interval, ScalarField};
pub use reconstruct::{ReconstructEvent, Reconstruction};

pub use nalgebra::{Matrix3, Vector3};

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
