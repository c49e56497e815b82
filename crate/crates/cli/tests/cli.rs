//! End-to-end checks of the binary: exit codes, artifact layout, determinism.

use std::path::Path;
use std::process::Command;

fn cdasym() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cdasym"))
}

#[test]
fn unknown_scenario_is_a_usage_error() {
    let out = cdasym().args(["run", "definitely-not-a-scenario"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unknown scenario"), "stderr: {stderr}");
}

#[test]
fn unsupported_profile_exponent_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = cdasym()
        .args(["profile", "--mass", "1.0", "--q", "1.7"])
        .args(["--out", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_emits_the_full_artifact_layout_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        let status = cdasym()
            .args(["run", "linear-convection", "--out", out.to_str().unwrap()])
            .status()
            .unwrap();
        assert!(status.success());
    }
    for name in ["report.json", "series.csv", "manifest.json"] {
        assert!(out_a.join(name).is_file(), "missing {name}");
    }
    assert!(out_a.join("snapshots").join("snap_0000.csv").is_file());
    assert!(out_a.join("plots").join("moving_kernel_distance.csv").is_file());

    // identical config => byte-identical outputs (reports carry no timestamps)
    for name in ["report.json", "series.csv", "manifest.json"] {
        let a = std::fs::read(out_a.join(name)).unwrap();
        let b = std::fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical reruns");
    }

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_a.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["all_pass"], serde_json::Value::Bool(true));
    assert_eq!(report["scenario"], "linear-convection");
}

#[test]
fn profile_summary_has_sorted_keys_and_mass_check() {
    let dir = tempfile::tempdir().unwrap();
    let status = cdasym()
        .args(["profile", "--mass", "0.5", "--q", "2.0", "--n", "2048"])
        .args(["--out", dir.path().to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(dir.path().join("summary.json")).unwrap();
    let summary: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(summary["mass_error"].as_f64().unwrap() < 1e-8);
    // keys are emitted sorted
    let keys: Vec<&str> = summary.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
    assert!(dir.path().join("profile.csv").is_file());
}

#[test]
fn degenerate_single_cell_sweep_runs_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.toml");
    std::fs::write(&config, "[sweep]\nqs = [3.0]\nps = [\"inf\"]\nn = 1024\nt_end = 100.0\n")
        .unwrap();
    let run = |out: &Path| {
        let status = cdasym()
            .args(["sweep", "--config", config.to_str().unwrap(), "--jobs", "2"])
            .args(["--out", out.to_str().unwrap()])
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out.join("report.json")).unwrap()
    };
    let a = run(&dir.path().join("a"));
    let b = run(&dir.path().join("b"));
    assert_eq!(a, b, "sweep reruns must be byte-identical");
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let cells = report["cells"].as_object().unwrap();
    assert_eq!(cells.len(), 1);
    assert!(cells.contains_key("q=3,p=inf"));
    assert_eq!(report["all_pass"], serde_json::Value::Bool(true));
}

#[test]
fn out_env_var_sets_the_default_output_root() {
    let dir = tempfile::tempdir().unwrap();
    let status = cdasym()
        .env("CDASYM_OUT", dir.path())
        .args(["run", "linear-convection"])
        .status()
        .unwrap();
    assert!(status.success());
    assert!(dir.path().join("linear-convection").join("report.json").is_file());
}

#[test]
fn config_file_overrides_are_applied_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "[overrides]\nn = 1025\ndt = 0.002\n").unwrap();
    let out = dir.path().join("out");
    let status = cdasym()
        .args(["run", "linear-convection", "--config", config.to_str().unwrap()])
        .args(["--t-end", "2.0", "--out", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["config"]["n"], 1025);
    assert_eq!(report["config"]["dt"], 0.002);
    assert_eq!(report["config"]["t_end"], 2.0);
}
