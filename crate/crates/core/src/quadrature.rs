//! Composite trapezoid quadrature on uniform grids.
//!
//! Trapezoid weights are exact for piecewise-linear data and spectrally
//! accurate for smooth integrands that decay below rounding at the domain
//! ends, which is the regime every field in this crate lives in. Integrals
//! are always taken over the truncated domain; the far field is treated as
//! zero.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::scalar::{real, Scalar};

/// An L^p exponent. Infinity is a distinguished value rather than a large
/// float so the sup norm never exponentiates samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);
    pub const INF: Exponent = Exponent::Infinity;

    /// `1 - 1/p`, the factor that appears in every decay exponent.
    pub fn conjugate_deficit(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 - 1.0 / p,
            Exponent::Infinity => 1.0,
        }
    }

    pub fn label(self) -> String {
        match self {
            Exponent::Finite(p) => {
                if p == p.trunc() {
                    format!("{}", p as i64)
                } else {
                    format!("{p}")
                }
            }
            Exponent::Infinity => "inf".to_string(),
        }
    }
}

/// Trapezoid integral of raw samples with spacing `dx`.
pub fn trapezoid<T: Scalar>(values: &[T], dx: T) -> T {
    let n = values.len();
    if n < 2 {
        return T::zero();
    }
    let half = real::<T>(0.5);
    let mut acc = half * (values[0] + values[n - 1]);
    for &v in &values[1..n - 1] {
        acc += v;
    }
    acc * dx
}

/// Mass functional: trapezoid integral of the field over its grid.
pub fn trapezoid_integral<T: Scalar>(f: &Field<T>) -> Result<T> {
    if f.is_empty() {
        return Err(Error::InvalidField("cannot integrate an empty field".into()));
    }
    f.check_finite()?;
    Ok(trapezoid(f.values(), f.grid().dx()))
}

/// Cumulative trapezoid: `out[i]` integrates from the left endpoint to node `i`.
pub fn cumulative_trapezoid<T: Scalar>(values: &[T], dx: T) -> Vec<T> {
    let half = real::<T>(0.5);
    let mut out = Vec::with_capacity(values.len());
    let mut acc = T::zero();
    out.push(acc);
    for w in values.windows(2) {
        acc += half * (w[0] + w[1]) * dx;
        out.push(acc);
    }
    out
}

/// L^p norm of a field: `(trapezoid |u|^p)^(1/p)` for finite `p`, `max |u_i|`
/// for `p = inf`.
pub fn lp_norm<T: Scalar>(f: &Field<T>, p: Exponent) -> Result<T> {
    if f.is_empty() {
        return Err(Error::InvalidField("cannot take the norm of an empty field".into()));
    }
    match p {
        Exponent::Infinity => Ok(f.max_abs()),
        Exponent::Finite(p) => {
            if !(p >= 1.0) {
                return Err(Error::InvalidExponent(format!("L^p norms need p >= 1, got {p}")));
            }
            let pt = real::<T>(p);
            let powered: Vec<T> = f.values().iter().map(|&v| v.abs().powf(pt)).collect();
            Ok(trapezoid(&powered, f.grid().dx()).powf(pt.recip()))
        }
    }
}
