//! Report structures and deterministic JSON emission.

use cdasym_core::diagnostics::DecayReport;
use cdasym_core::initial::InitialData;
use serde::Serialize;

/// One named pass/fail check with its measured numbers in the detail string.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: &str, pass: bool, detail: String) -> Self {
        Self { name: name.to_string(), pass, detail }
    }
}

/// Echo of the fully resolved configuration a scenario ran with.
#[derive(Clone, Debug, Serialize)]
pub struct ResolvedConfig {
    pub scenario: String,
    pub n: usize,
    pub domain: (f64, f64),
    pub dt: f64,
    pub t_end: f64,
    pub q: Option<f64>,
    pub a: f64,
    pub mass: f64,
    pub scheme: String,
    pub frame: String,
    pub generator: InitialData,
}

/// The `report.json` payload. Deliberately carries no timestamps so reruns
/// with the same configuration are byte-identical.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    /// Plain-language statement of the asymptotic laws this scenario checks.
    pub laws: Vec<String>,
    pub config: ResolvedConfig,
    pub verdicts: Vec<Verdict>,
    pub decay_fits: Vec<DecayReport>,
    pub all_pass: bool,
}

impl ScenarioReport {
    pub fn finish(mut self) -> Self {
        self.all_pass =
            self.verdicts.iter().all(|v| v.pass) && self.decay_fits.iter().all(|d| d.passed());
        self
    }
}

/// Serialize with sorted keys (serde_json maps are BTree-backed by default)
/// and a trailing newline, UTF-8.
pub fn to_sorted_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let value = serde_json::to_value(value)?;
    Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
}
