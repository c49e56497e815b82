//! Run configuration for the time integrators.

use crate::error::{Error, Result};
use crate::field::Frame;
use crate::grid::Grid1D;
use crate::initial::InitialData;
use crate::nonlinearity::Nonlinearity;
use crate::scalar::Scalar;

/// Time-stepping scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Scheme {
    /// Crank-Nicolson diffusion, explicit conservative centered flux.
    ImexCn,
    /// Fully explicit with a monotone upwind flux; selects entropy solutions
    /// in the strongly nonlinear regime.
    UpwindExplicit,
}

/// When to record snapshots along a run.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Cadence {
    /// Every `k`-th step (must divide the total step count).
    EveryKSteps(usize),
    /// Snapshot at the first step whose time reaches each requested value.
    /// Used for the logarithmically spaced long-horizon runs.
    AtTimes(Vec<f64>),
}

impl Cadence {
    /// Logarithmically spaced times from `t_first` to `t_end`.
    pub fn log_spaced(t_first: f64, t_end: f64, count: usize) -> Self {
        assert!(t_first > 0.0 && t_end > t_first && count >= 2);
        let ratio = (t_end / t_first).ln() / (count - 1) as f64;
        Cadence::AtTimes((0..count).map(|i| t_first * (ratio * i as f64).exp()).collect())
    }
}

/// Everything a solver run needs.
#[derive(Clone, Debug)]
pub struct RunConfig<T: Scalar> {
    pub grid: Grid1D<T>,
    pub nonlinearity: Nonlinearity<T>,
    pub initial_data: InitialData,
    pub t_end: f64,
    pub dt: f64,
    pub frame: Frame,
    pub scheme: Scheme,
    pub cadence: Cadence,
    /// Allow the physical-frame domain to grow when the boundary guard trips.
    pub grow_domain: bool,
}

impl<T: Scalar> RunConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::InvalidConfig(format!("t_end must be positive, got {}", self.t_end)));
        }
        let steps = self.step_count();
        if steps == 0 {
            return Err(Error::InvalidConfig("t_end shorter than one step".into()));
        }
        match &self.cadence {
            Cadence::EveryKSteps(k) => {
                if *k == 0 || steps % k != 0 {
                    return Err(Error::InvalidConfig(format!(
                        "cadence {k} must divide the step count {steps}"
                    )));
                }
            }
            Cadence::AtTimes(times) => {
                if times.is_empty() {
                    return Err(Error::InvalidConfig("empty snapshot time list".into()));
                }
                if times.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidConfig("snapshot times must increase".into()));
                }
                if times.last().copied().unwrap_or(0.0) > self.t_end * (1.0 + 1e-12) {
                    return Err(Error::InvalidConfig("snapshot time beyond t_end".into()));
                }
            }
        }
        Ok(())
    }

    pub fn step_count(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> RunConfig<f64> {
        RunConfig {
            grid: Grid1D::symmetric(10.0, 64).unwrap(),
            nonlinearity: Nonlinearity::none(),
            initial_data: InitialData::Gaussian { mass: 1.0, width: 1.0, center: 0.0 },
            t_end: 1.0,
            dt: 0.01,
            frame: Frame::Physical,
            scheme: Scheme::ImexCn,
            cadence: Cadence::EveryKSteps(10),
            grow_domain: false,
        }
    }

    #[test]
    fn accepts_consistent_config() {
        base().validate().unwrap();
    }

    #[test]
    fn rejects_cadence_not_dividing_steps() {
        let mut c = base();
        c.cadence = Cadence::EveryKSteps(7);
        assert!(c.validate().is_err());
    }

    #[test]
    fn rejects_nonpositive_dt_and_t_end() {
        let mut c = base();
        c.dt = 0.0;
        assert!(c.validate().is_err());
        let mut c = base();
        c.t_end = -1.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn log_spacing_hits_both_ends() {
        let c = Cadence::log_spaced(1.0, 100.0, 9);
        if let Cadence::AtTimes(ts) = c {
            assert!((ts[0] - 1.0).abs() < 1e-12);
            assert!((ts[8] - 100.0).abs() < 1e-9);
            assert_eq!(ts.len(), 9);
        } else {
            panic!("expected AtTimes");
        }
    }
}
