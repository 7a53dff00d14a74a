//! Intrinsic data: scalar fields over arc length and the validated
//! curvature/torsion profile consumed by the solver and generators.

use alloc::sync::Arc;

use crate::error::Error;
use crate::expr::ScalarExpr;
use crate::Result;

/// A scalar function of arc length.
///
/// Implementations must be pure: the same `s` always yields the same value.
/// That makes every consumer in this crate safe to run concurrently.
pub trait ScalarField: Send + Sync {
    fn eval(&self, s: f64) -> Result<f64>;
}

impl ScalarField for ScalarExpr {
    fn eval(&self, s: f64) -> Result<f64> {
        ScalarExpr::eval(self, s).map_err(Error::from)
    }
}

/// A constant field.
impl ScalarField for f64 {
    fn eval(&self, _s: f64) -> Result<f64> {
        Ok(*self)
    }
}

/// Adapter turning a plain closure into a [`ScalarField`].
pub struct FieldFn<F>(pub F);

impl<F> ScalarField for FieldFn<F>
where
    F: Fn(f64) -> f64 + Send + Sync,
{
    fn eval(&self, s: f64) -> Result<f64> {
        Ok((self.0)(s))
    }
}

/// A closed arc-length interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidDomain { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, s: f64) -> bool {
        self.lo <= s && s <= self.hi
    }
}

/// Number of validation samples taken across the domain at construction.
const VALIDATION_SAMPLES: usize = 1025;

/// Relative stencil width for the curvature derivative.
const KAPPA_PRIME_STENCIL: f64 = 1e-6;

/// Curvature `κ(s) > 0` and torsion `τ(s)` over a closed arc-length interval.
///
/// Construction samples both fields densely across the domain and rejects
/// profiles whose curvature is not strictly positive or whose fields do not
/// evaluate to finite values.
#[derive(Clone)]
pub struct IntrinsicProfile {
    kappa: Arc<dyn ScalarField>,
    tau: Arc<dyn ScalarField>,
    domain: Interval,
}

impl core::fmt::Debug for IntrinsicProfile {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("IntrinsicProfile")
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl IntrinsicProfile {
    pub fn new(
        kappa: Arc<dyn ScalarField>,
        tau: Arc<dyn ScalarField>,
        domain: Interval,
    ) -> Result<Self> {
        let n = VALIDATION_SAMPLES;
        for i in 0..n {
            let frac = i as f64 / (n - 1) as f64;
            let s = domain.lo + frac * domain.length();
            let k = kappa.eval(s)?;
            if !k.is_finite() {
                return Err(Error::InvalidProfile {
                    what: "curvature is not finite",
                    s,
                    value: k,
                });
            }
            if k <= 0.0 {
                return Err(Error::InvalidProfile {
                    what: "curvature must be strictly positive",
                    s,
                    value: k,
                });
            }
            let t = tau.eval(s)?;
            if !t.is_finite() {
                return Err(Error::InvalidProfile {
                    what: "torsion is not finite",
                    s,
                    value: t,
                });
            }
        }
        Ok(IntrinsicProfile { kappa, tau, domain })
    }

    /// Builds a profile by parsing `κ` and `τ` formulas of `s`.
    pub fn from_formulas(kappa: &str, tau: &str, domain: Interval) -> Result<Self> {
        let kappa = ScalarExpr::parse(kappa)?;
        let tau = ScalarExpr::parse(tau)?;
        IntrinsicProfile::new(Arc::new(kappa), Arc::new(tau), domain)
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn kappa(&self, s: f64) -> Result<f64> {
        self.kappa.eval(s)
    }

    pub fn tau(&self, s: f64) -> Result<f64> {
        self.tau.eval(s)
    }

    pub fn kappa_field(&self) -> Arc<dyn ScalarField> {
        self.kappa.clone()
    }

    pub fn tau_field(&self) -> Arc<dyn ScalarField> {
        self.tau.clone()
    }

    /// Curvature derivative by a central finite difference with stencil
    /// `1e-6 · max(1, |s|)`, clipped so the field is never evaluated outside
    /// the domain (the clipped form degrades to a one-sided difference at
    /// the endpoints).
    pub fn kappa_prime(&self, s: f64) -> Result<f64> {
        let delta = KAPPA_PRIME_STENCIL * s.abs().max(1.0);
        let hi = (s + delta).min(self.domain.hi);
        let lo = (s - delta).max(self.domain.lo);
        let span = hi - lo;
        if span <= 0.0 {
            return Err(Error::InvalidParameter(
                "kappa_prime stencil collapsed; domain shorter than the stencil",
            ));
        }
        Ok((self.kappa.eval(hi)? - self.kappa.eval(lo)?) / span)
    }
}
