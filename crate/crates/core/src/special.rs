//! Error-function helpers used by the closed-form solutions.
//!
//! Backed by `libm`'s FDLIBM port (correct to < 1 ulp in f64), so the
//! cumulative Gaussian below is trustworthy as an oracle.

use crate::scalar::{real, Scalar};

pub fn erf<T: Scalar>(x: T) -> T {
    real(libm::erf(x.to_f64_lossy()))
}

pub fn erfc<T: Scalar>(x: T) -> T {
    real(libm::erfc(x.to_f64_lossy()))
}

/// Cumulative integral of the unit-mass Gaussian `h(x) = (4 pi)^(-1/2) e^(-x^2/4)`:
/// `H(x) = (1 + erf(x/2)) / 2`.
pub fn gaussian_cumulative<T: Scalar>(x: T) -> T {
    let half = real::<T>(0.5);
    half * (T::one() + erf(x * half))
}
