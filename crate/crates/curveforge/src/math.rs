//! Float shims so the crate builds both with `std` and with `libm`.

/// Chooses libm implementations of the float methods the crate needs when
/// `std` (and with it the inherent `f64` math methods) is unavailable.
#[cfg(not(feature = "std"))]
pub(crate) trait FloatExt: Sized {
    fn acos(self) -> Self;
    fn atan(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn floor(self) -> Self;
    fn ln(self) -> Self;
    fn powf(self, n: Self) -> Self;
    fn round(self) -> Self;
    fn sin(self) -> Self;
    fn sqrt(self) -> Self;
    fn tan(self) -> Self;
}

#[cfg(not(feature = "std"))]
impl FloatExt for f64 {
    fn acos(self) -> f64 {
        libm::acos(self)
    }
    fn atan(self) -> f64 {
        libm::atan(self)
    }
    fn cos(self) -> f64 {
        libm::cos(self)
    }
    fn exp(self) -> f64 {
        libm::exp(self)
    }
    fn floor(self) -> f64 {
        libm::floor(self)
    }
    fn ln(self) -> f64 {
        libm::log(self)
    }
    fn powf(self, n: f64) -> f64 {
        libm::pow(self, n)
    }
    fn round(self) -> f64 {
        libm::round(self)
    }
    fn sin(self) -> f64 {
        libm::sin(self)
    }
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    fn tan(self) -> f64 {
        libm::tan(self)
    }
}
