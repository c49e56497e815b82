//! On-disk layout of a run: report, series, snapshots, plot data, manifest.

use std::path::{Path, PathBuf};

use anyhow::Context;
use cdasym_core::io;
use cdasym_core::Trajectory64;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::report::{to_sorted_json, ScenarioReport};
use crate::scenarios::ScenarioOutcome;

/// Default output root: `$CDASYM_OUT` or `./out`.
pub fn default_out_root() -> PathBuf {
    std::env::var_os("CDASYM_OUT").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("out"))
}

#[derive(Serialize)]
struct Manifest<'a> {
    scenario: &'a str,
    scheme: &'a str,
    config: &'a crate::report::ResolvedConfig,
    config_sha256: String,
    snapshots: Vec<String>,
    series: &'a str,
}

/// Write everything a scenario produced under `dir`.
pub fn persist(outcome: &ScenarioOutcome, dir: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir)?;
    let report_json = to_sorted_json(&outcome.report)?;
    std::fs::write(dir.join("report.json"), &report_json)
        .with_context(|| format!("writing report under {}", dir.display()))?;

    // snapshots and series for the scenario's primary trajectory
    let mut snapshot_names = Vec::new();
    if let Some((_, trajectory)) = outcome.trajectories.first() {
        write_series(&dir.join("series.csv"), trajectory)?;
        let snap_dir = dir.join("snapshots");
        for (k, snap) in trajectory.snapshots.iter().enumerate() {
            let name = format!("snap_{k:04}.csv");
            io::write_field_csv(&snap_dir.join(&name), &snap.field)?;
            snapshot_names.push(name);
        }
    }

    let plots = dir.join("plots");
    for table in &outcome.curves {
        io::write_columns(
            &plots.join(format!("{}.csv", table.name)),
            &table.header,
            table.rows.iter().cloned(),
        )?;
    }
    for table in &outcome.extras {
        io::write_columns(
            &dir.join(format!("{}.csv", table.name)),
            &table.header,
            table.rows.iter().cloned(),
        )?;
    }

    let config_json = to_sorted_json(&outcome.report.config)?;
    let manifest = Manifest {
        scenario: &outcome.report.scenario,
        scheme: &outcome.report.config.scheme,
        config: &outcome.report.config,
        config_sha256: format!("{:x}", Sha256::digest(config_json.as_bytes())),
        snapshots: snapshot_names,
        series: "series.csv",
    };
    std::fs::write(dir.join("manifest.json"), to_sorted_json(&manifest)?)?;
    Ok(())
}

pub fn write_series(path: &Path, trajectory: &Trajectory64) -> anyhow::Result<()> {
    io::write_columns(
        path,
        "t,mass,l1,l2,linf,grad_l2",
        trajectory
            .series()
            .iter()
            .map(|s| vec![s.t, s.mass, s.l1, s.l2, s.linf, s.grad_l2]),
    )?;
    Ok(())
}

/// Print the verdict lines of a report to stdout, one per check.
pub fn print_verdicts(report: &ScenarioReport) {
    for v in &report.verdicts {
        println!("{} {} - {}", if v.pass { "PASS" } else { "FAIL" }, v.name, v.detail);
    }
    for d in &report.decay_fits {
        println!(
            "{} fit[{}] p={} slope {:.4} vs target {:.4} (rel err {:.1}%)",
            if d.passed() { "PASS" } else { "FAIL" },
            d.quantity,
            d.p,
            d.fitted_slope,
            d.target_slope,
            d.rel_error * 100.0
        );
    }
}
