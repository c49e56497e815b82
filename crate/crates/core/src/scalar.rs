//! Scalar abstraction for all numerical kernels.
//!
//! Every algorithm in this crate is written against [`Scalar`] so the same
//! code runs in `f32` or `f64`. Production runs and the acceptance tolerances
//! assume `f64`; the concrete aliases at the crate root reflect that.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar usable as the sample type of grids and fields.
pub trait Scalar:
    Float
    + FromPrimitive
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`, used for literals and tolerances.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal must convert")
    }

    /// Widening conversion to `f64` for reporting and regression.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Shorthand for `T::of` that reads well in arithmetic-heavy code.
#[inline]
pub fn real<T: Scalar>(x: f64) -> T {
    T::of(x)
}
