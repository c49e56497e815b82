//! Experiment orchestration for the convection-diffusion laboratory: named
//! scenario presets, profile emission, and parameter sweeps.

pub mod output;
pub mod profile;
pub mod report;
pub mod scenarios;
pub mod sweep;

/// Marker for command-line misuse (unknown scenario, malformed config,
/// unsupported parameter combination); the binary maps it to exit code 2 so
/// CI can distinguish usage mistakes from numerical failures.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}
