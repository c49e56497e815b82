//! The convective flux `F` of `u_t - u_xx = a (F(u))_x`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{real, Scalar};

type Evaluator<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Flux shape. `a` is the convection coefficient multiplying `(F(u))_x`.
#[derive(Clone)]
pub enum FluxKind<T: Scalar> {
    /// `F(u) = |u|^(q-1) u` with `q > 1`.
    PowerLaw { q: T, a: T },
    /// `F(u) = u`; pure linear convection.
    Linear { a: T },
    /// Caller-supplied flux and derivative. `F(0) = 0` is required.
    Custom { f: Evaluator<T>, df: Evaluator<T>, a: T },
}

/// A flux `F` together with its convection coefficient and the drift
/// `b = F'(0)` that a moving frame can remove.
#[derive(Clone)]
pub struct Nonlinearity<T: Scalar> {
    kind: FluxKind<T>,
    drift_b: T,
}

impl<T: Scalar> Nonlinearity<T> {
    /// Tolerance for the finite-difference check of `drift_b` on custom fluxes.
    const DRIFT_TOL: f64 = 1e-8;

    pub fn power_law(q: T, a: T) -> Result<Self> {
        if !(q > T::one()) || !q.is_finite() {
            return Err(Error::InvalidExponent(format!("power-law flux needs q > 1, got {q}")));
        }
        Ok(Self { kind: FluxKind::PowerLaw { q, a }, drift_b: T::zero() })
    }

    pub fn linear(a: T) -> Self {
        Self { kind: FluxKind::Linear { a }, drift_b: T::one() }
    }

    /// No convection at all: `a = 0`. Reduces the equation to pure diffusion.
    pub fn none() -> Self {
        Self { kind: FluxKind::Linear { a: T::zero() }, drift_b: T::one() }
    }

    pub fn custom(
        f: impl Fn(T) -> T + Send + Sync + 'static,
        df: impl Fn(T) -> T + Send + Sync + 'static,
        a: T,
    ) -> Result<Self> {
        if f(T::zero()).abs() > real(1e-14) {
            return Err(Error::InvalidConfig("custom flux must satisfy F(0) = 0".into()));
        }
        let drift_b = df(T::zero());
        // cross-check the supplied derivative at the origin by central
        // difference, Richardson-extrapolated so the kink of |u|^(q-1) u
        // fluxes in F'' does not show up as a first-order error
        let two = real::<T>(2.0);
        let h = real::<T>(1e-5);
        let central = |h: T| (f(h) - f(-h)) / (two * h);
        let fd = two * central(h / two) - central(h);
        if (fd - drift_b).abs().to_f64_lossy() > Self::DRIFT_TOL * (1.0 + drift_b.abs().to_f64_lossy())
        {
            return Err(Error::InvalidConfig(format!(
                "custom flux derivative at 0 ({drift_b}) disagrees with finite difference ({fd})"
            )));
        }
        Ok(Self { kind: FluxKind::Custom { f: Arc::new(f), df: Arc::new(df), a }, drift_b })
    }

    #[inline]
    pub fn kind(&self) -> &FluxKind<T> {
        &self.kind
    }

    /// `F(u)`.
    #[inline]
    pub fn flux(&self, u: T) -> T {
        match &self.kind {
            FluxKind::PowerLaw { q, .. } => u.abs().powf(*q - T::one()) * u,
            FluxKind::Linear { .. } => u,
            FluxKind::Custom { f, .. } => f(u),
        }
    }

    /// `F'(u)`.
    #[inline]
    pub fn flux_derivative(&self, u: T) -> T {
        match &self.kind {
            FluxKind::PowerLaw { q, .. } => *q * u.abs().powf(*q - T::one()),
            FluxKind::Linear { .. } => T::one(),
            FluxKind::Custom { df, .. } => df(u),
        }
    }

    /// Convection coefficient `a`.
    #[inline]
    pub fn convection(&self) -> T {
        match &self.kind {
            FluxKind::PowerLaw { a, .. } | FluxKind::Linear { a } | FluxKind::Custom { a, .. } => *a,
        }
    }

    /// `b = F'(0)`.
    #[inline]
    pub fn drift_b(&self) -> T {
        self.drift_b
    }

    /// Frame velocity `a * F'(0)` removed by the drift shift.
    #[inline]
    pub fn drift_velocity(&self) -> T {
        self.convection() * self.drift_b
    }

    /// Power-law exponent when there is one.
    pub fn exponent_q(&self) -> Option<T> {
        match &self.kind {
            FluxKind::PowerLaw { q, .. } => Some(*q),
            FluxKind::Linear { .. } => Some(T::one()),
            FluxKind::Custom { .. } => None,
        }
    }
}

impl<T: Scalar> fmt::Debug for Nonlinearity<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FluxKind::PowerLaw { q, a } => write!(f, "PowerLaw {{ q: {q}, a: {a} }}"),
            FluxKind::Linear { a } => write!(f, "Linear {{ a: {a} }}"),
            FluxKind::Custom { a, .. } => write!(f, "Custom {{ a: {a} }}"),
        }
    }
}
