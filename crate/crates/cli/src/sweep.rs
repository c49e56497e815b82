//! The `sweep` command: a (q, p) matrix of decay-rate cells, run in parallel
//! and aggregated deterministically.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, Context};
use cdasym_core::config::{Cadence, RunConfig, Scheme};
use cdasym_core::diagnostics::{fit_decay, DecayReport};
use cdasym_core::field::Frame;
use cdasym_core::initial::InitialData;
use cdasym_core::nonlinearity::Nonlinearity;
use cdasym_core::quadrature::{lp_norm, Exponent};
use cdasym_core::solver;
use cdasym_core::Grid64;
use serde::{Deserialize, Serialize};

use crate::UsageError;

#[derive(Clone, Debug, Deserialize)]
pub struct SweepConfig {
    pub qs: Vec<f64>,
    pub ps: Vec<String>,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_t_end")]
    pub t_end: f64,
    #[serde(default = "default_mass")]
    pub mass: f64,
    pub generator: Option<InitialData>,
}

fn default_n() -> usize {
    2048
}
fn default_t_end() -> f64 {
    100.0
}
fn default_mass() -> f64 {
    1.0
}

#[derive(Deserialize)]
struct SweepFile {
    sweep: SweepConfig,
}

pub fn load_config(path: &Path) -> anyhow::Result<SweepConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading sweep config {}", path.display()))?;
    let file: SweepFile =
        toml::from_str(&text).map_err(|e| UsageError(format!("bad sweep config: {e}")))?;
    if file.sweep.qs.is_empty() || file.sweep.ps.is_empty() {
        return Err(UsageError("sweep needs at least one q and one p".into()).into());
    }
    Ok(file.sweep)
}

fn parse_p(label: &str) -> anyhow::Result<Exponent> {
    match label {
        "inf" | "Inf" | "INF" => Ok(Exponent::Infinity),
        other => {
            let p: f64 = other
                .parse()
                .map_err(|_| UsageError(format!("bad norm index {other:?}; use a number or `inf`")))?;
            Ok(Exponent::Finite(p))
        }
    }
}

/// Decay target of `||u(t)||_p` for the power-law flux in one dimension:
/// the kernel rate for q >= 2 and the faster wave rate below it.
fn target_slope(q: f64, p: Exponent) -> f64 {
    let d = p.conjugate_deficit();
    if q < 2.0 {
        -d / q
    } else {
        -0.5 * d
    }
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Cell {
    Fit(DecayReport),
    Error { error: String },
}

#[derive(Serialize)]
pub struct SweepReport {
    pub cells: BTreeMap<String, Cell>,
    pub all_pass: bool,
    pub any_error: bool,
}

fn run_q_row(config: &SweepConfig, q: f64) -> anyhow::Result<Vec<(String, DecayReport)>> {
    // Below the critical exponent the wave moves right and needs the
    // monotone scheme; at and above it the centered IMEX scheme applies.
    // The strong-regime row also defaults to a heavy narrow bump: the wave's
    // convection-diffusion balance is proportional to the mass, and a light
    // wave never outruns its own viscosity on desk horizons.
    let (grid, nl, scheme, dt, default_gen) = if q < 2.0 {
        let grid = Grid64::new(-30.0, 80.0, config.n)?;
        let dt = 0.18 * grid.dx() * grid.dx();
        let gen = InitialData::Gaussian { mass: 200.0 * config.mass, width: 0.5, center: 0.0 };
        (grid, Nonlinearity::power_law(q, -1.0 / q).map_err(|e| anyhow!(e.to_string()))?, Scheme::UpwindExplicit, dt, gen)
    } else {
        let grid = Grid64::symmetric(100.0, config.n)?;
        let gen = InitialData::Gaussian { mass: config.mass, width: 1.0, center: 0.0 };
        (grid, Nonlinearity::power_law(q, 1.0).map_err(|e| anyhow!(e.to_string()))?, Scheme::ImexCn, 0.01, gen)
    };
    let steps = (config.t_end / dt).ceil() as usize;
    let t_end = steps as f64 * dt;
    let generator = config.generator.clone().unwrap_or(default_gen);
    let run_config = RunConfig {
        grid,
        nonlinearity: nl,
        initial_data: generator,
        t_end,
        dt,
        frame: Frame::Physical,
        scheme,
        cadence: Cadence::log_spaced(1.0, config.t_end, 17),
        grow_domain: true,
    };
    let traj = solver::run(&run_config)?;

    let mut out = Vec::new();
    for p_label in &config.ps {
        let p = parse_p(p_label)?;
        let series: Vec<(f64, f64)> = traj
            .snapshots
            .iter()
            .map(|s|

                Ok::<_, anyhow::Error>((s.stats.t, lp_norm(&s.field, p).map_err(|e| anyhow!(e.to_string()))?)))
            .collect::<Result<_, _>>()?;
        let fit = fit_decay(
            &series,
            (config.t_end / 10.0, config.t_end),
            &format!("||u||_p decay, q = {q}"),
            p_label,
            target_slope(q, p),
            0.10,
        )?;
        out.push((format!("q={q},p={p_label}"), fit));
    }
    Ok(out)
}

/// Run all rows with at most `jobs` worker threads; the aggregate is a
/// BTreeMap so the output order never depends on scheduling.
pub fn run_sweep(config: &SweepConfig, jobs: usize) -> anyhow::Result<SweepReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| anyhow!("thread pool: {e}"))?;
    let rows: Vec<(f64, Result<Vec<(String, DecayReport)>, String>)> = pool.install(|| {
        use rayon::prelude::*;
        config
            .qs
            .par_iter()
            .map(|&q| (q, run_q_row(config, q).map_err(|e| e.to_string())))
            .collect()
    });

    let mut cells = BTreeMap::new();
    let mut any_error = false;
    let mut all_pass = true;
    for (q, row) in rows {
        match row {
            Ok(fits) => {
                for (key, fit) in fits {
                    all_pass &= fit.passed();
                    cells.insert(key, Cell::Fit(fit));
                }
            }
            Err(e) => {
                any_error = true;
                all_pass = false;
                for p_label in &config.ps {
                    cells.insert(format!("q={q},p={p_label}"), Cell::Error { error: e.clone() });
                }
            }
        }
    }
    Ok(SweepReport { cells, all_pass, any_error })
}
