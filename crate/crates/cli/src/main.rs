use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use cdasym::output::{self, default_out_root};
use cdasym::profile::{compute_profile, ProfileRoute};
use cdasym::report::to_sorted_json;
use cdasym::scenarios::{run_scenario, Overrides, Scenario};
use cdasym::sweep::{load_config, run_sweep};
use cdasym::UsageError;
use clap::{Parser, Subcommand};

/// Numerical laboratory for 1D scalar convection-diffusion equations:
/// scenario runs, self-similar profiles, and decay-rate sweeps.
#[derive(Parser)]
#[command(name = "cdasym", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named scenario and write its report and artifacts.
    Run {
        /// One of: heat-asymptotics | linear-convection | burgers-hopfcole |
        /// similarity-spectral | decay-suite | weak-nonlinear |
        /// self-similar-critical | nwave-strong | contraction-suite
        scenario: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long = "t-end")]
        t_end: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        mass: Option<f64>,
        /// Output directory (default: $CDASYM_OUT or ./out, plus the scenario name).
        #[arg(long)]
        out: Option<PathBuf>,
        /// TOML file with an `[overrides]` table; command-line flags win.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Emit a self-similar profile with its mass/sign/residual checks.
    Profile {
        #[arg(long)]
        mass: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 4097)]
        n: usize,
        /// closed | dynamical
        #[arg(long, default_value = "closed")]
        route: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a (q, p) decay-rate matrix from a TOML config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 4)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(serde::Deserialize, Default)]
struct RunFile {
    #[serde(default)]
    overrides: Overrides,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { scenario, n, dt, t_end, q, mass, out, config } => {
            let scenario: Scenario = scenario
                .parse()
                .map_err(|e: anyhow::Error| UsageError(e.to_string()))?;
            let mut overrides = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let file: RunFile = toml::from_str(&text)
                        .map_err(|e| UsageError(format!("bad run config: {e}")))?;
                    file.overrides
                }
                None => Overrides::default(),
            };
            // command-line flags override file values
            overrides.n = n.or(overrides.n);
            overrides.dt = dt.or(overrides.dt);
            overrides.t_end = t_end.or(overrides.t_end);
            overrides.q = q.or(overrides.q);
            overrides.mass = mass.or(overrides.mass);

            let outcome = run_scenario(scenario, &overrides)?;
            let dir = out.unwrap_or_else(|| default_out_root().join(scenario.name()));
            output::persist(&outcome, &dir)?;
            output::print_verdicts(&outcome.report);
            println!(
                "{}: {} -> {}",
                scenario.name(),
                if outcome.report.all_pass { "all checks passed" } else { "CHECKS FAILED" },
                dir.display()
            );
            Ok(if outcome.report.all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Profile { mass, q, n, route, out } => {
            let route: ProfileRoute = route.parse()?;
            let outcome = compute_profile(mass, q, n, route)?;
            let dir = out.unwrap_or_else(|| default_out_root().join("profile"));
            std::fs::create_dir_all(&dir)?;
            let xs: Vec<f64> = outcome.field.grid().nodes();
            let fs: Vec<f64> = outcome.field.values().to_vec();
            cdasym_core::io::write_profile_csv(&dir.join("profile.csv"), &xs, &fs)?;
            std::fs::write(dir.join("summary.json"), to_sorted_json(&outcome.summary)?)?;
            println!(
                "profile M = {mass}, q = {q}: mass error {:.3e}, residual {:.3e}{} -> {}",
                outcome.summary.mass_error,
                outcome.summary.ode_residual_sup,
                outcome
                    .summary
                    .closed_form_l1_distance
                    .map(|d| format!(", distance to closed form {d:.3e}"))
                    .unwrap_or_default(),
                dir.display()
            );
            Ok(if outcome.summary.checks_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Sweep { config, jobs, out } => {
            let sweep_config = load_config(&config)?;
            let report = run_sweep(&sweep_config, jobs)?;
            let dir = out.unwrap_or_else(|| default_out_root().join("sweep"));
            std::fs::create_dir_all(&dir)?;
            std::fs::write(dir.join("report.json"), to_sorted_json(&report)?)?;
            for (key, cell) in &report.cells {
                match cell {
                    cdasym::sweep::Cell::Fit(fit) => println!(
                        "{} {key}: slope {:.4} vs target {:.4}",
                        if fit.passed() { "PASS" } else { "FAIL" },
                        fit.fitted_slope,
                        fit.target_slope
                    ),
                    cdasym::sweep::Cell::Error { error } => println!("ERROR {key}: {error}"),
                }
            }
            Ok(if report.all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
