//! Named scenario presets: each resolves to a complete run configuration plus
//! the checks that verify its asymptotic laws.

use std::str::FromStr;

use anyhow::anyhow;
use cdasym_core::config::{Cadence, RunConfig, Scheme};
use cdasym_core::diagnostics::{
    attractor_distance, drift_extract_and_shift, entropy_slope_max, fit_decay,
    fit_exponential_rate, is_nonincreasing, lp_distance, strictly_decreasing_windows,
    weak_rate_check, RegimeSpec,
};
use cdasym_core::exact;
use cdasym_core::field::{Field, Frame};
use cdasym_core::initial::{make_initial, InitialData};
use cdasym_core::nonlinearity::Nonlinearity;
use cdasym_core::quadrature::{lp_norm, Exponent};
use cdasym_core::solver;
use cdasym_core::spectral::{self, WeightedBasis};
use cdasym_core::{Field64, Grid64, Nonlinearity64, RunConfig64, Trajectory64};

use crate::report::{ResolvedConfig, ScenarioReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    HeatAsymptotics,
    LinearConvection,
    BurgersHopfCole,
    SimilaritySpectral,
    DecaySuite,
    WeakNonlinear,
    SelfSimilarCritical,
    NwaveStrong,
    ContractionSuite,
}

impl Scenario {
    pub const ALL: [Scenario; 9] = [
        Scenario::HeatAsymptotics,
        Scenario::LinearConvection,
        Scenario::BurgersHopfCole,
        Scenario::SimilaritySpectral,
        Scenario::DecaySuite,
        Scenario::WeakNonlinear,
        Scenario::SelfSimilarCritical,
        Scenario::NwaveStrong,
        Scenario::ContractionSuite,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::HeatAsymptotics => "heat-asymptotics",
            Scenario::LinearConvection => "linear-convection",
            Scenario::BurgersHopfCole => "burgers-hopfcole",
            Scenario::SimilaritySpectral => "similarity-spectral",
            Scenario::DecaySuite => "decay-suite",
            Scenario::WeakNonlinear => "weak-nonlinear",
            Scenario::SelfSimilarCritical => "self-similar-critical",
            Scenario::NwaveStrong => "nwave-strong",
            Scenario::ContractionSuite => "contraction-suite",
        }
    }
}

impl FromStr for Scenario {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .iter()
            .copied()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| {
                anyhow!(
                    "unknown scenario {s:?}; expected one of: {}",
                    Scenario::ALL.map(|sc| sc.name()).join(", ")
                )
            })
    }
}

/// CLI / config-file overrides; every scenario applies the ones that make
/// sense for it.
#[derive(Clone, Copy, Debug, Default, serde::Deserialize)]
pub struct Overrides {
    pub n: Option<usize>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub q: Option<f64>,
    pub mass: Option<f64>,
}

/// A CSV table to persist: header plus float rows.
pub struct TableFile {
    pub name: String,
    pub header: String,
    pub rows: Vec<Vec<f64>>,
}

impl TableFile {
    /// Plain `t,value` curve.
    pub fn curve(name: &str, series: &[(f64, f64)]) -> Self {
        Self {
            name: name.to_string(),
            header: "t,value".into(),
            rows: series.iter().map(|&(t, v)| vec![t, v]).collect(),
        }
    }

    /// Attractor-distance curve: `t,distance,scaled_distance` with
    /// `distance = scaled / t^gamma`.
    pub fn attractor_curve(name: &str, scaled: &[(f64, f64)], gamma: f64) -> Self {
        Self {
            name: name.to_string(),
            header: "t,distance,scaled_distance".into(),
            rows: scaled.iter().map(|&(t, v)| vec![t, v / t.powf(gamma), v]).collect(),
        }
    }
}

pub struct ScenarioOutcome {
    pub report: ScenarioReport,
    /// Named trajectories, first one is persisted as series + snapshots.
    pub trajectories: Vec<(String, Trajectory64)>,
    /// Plot tables, persisted under `plots/`.
    pub curves: Vec<TableFile>,
    /// Reference tables persisted next to the report (wave samples, basis).
    pub extras: Vec<TableFile>,
}

pub fn run_scenario(scenario: Scenario, overrides: &Overrides) -> anyhow::Result<ScenarioOutcome> {
    match scenario {
        Scenario::HeatAsymptotics => heat_asymptotics(overrides),
        Scenario::LinearConvection => linear_convection(overrides),
        Scenario::BurgersHopfCole => burgers_hopfcole(overrides),
        Scenario::SimilaritySpectral => similarity_spectral(overrides),
        Scenario::DecaySuite => decay_suite(overrides),
        Scenario::WeakNonlinear => weak_nonlinear(overrides),
        Scenario::SelfSimilarCritical => self_similar_critical(overrides),
        Scenario::NwaveStrong => nwave_strong(overrides),
        Scenario::ContractionSuite => contraction_suite(overrides),
    }
}

// ---------------------------------------------------------------- helpers

fn resolved(
    scenario: Scenario,
    config: &RunConfig64,
    q: Option<f64>,
    mass: f64,
) -> ResolvedConfig {
    ResolvedConfig {
        scenario: scenario.name().to_string(),
        n: config.grid.len(),
        domain: (config.grid.x_min(), config.grid.x_max()),
        dt: config.dt,
        t_end: config.t_end,
        q,
        a: config.nonlinearity.convection(),
        mass,
        scheme: format!("{:?}", config.scheme),
        frame: format!("{:?}", config.frame),
        generator: config.initial_data.clone(),
    }
}

fn sup_distance(a: &Field64, b: &Field64) -> f64 {
    lp_distance(a, b, Exponent::INF).expect("shared grid")
}

/// Mass conservation verdict over a set of trajectories.
fn mass_verdict(trajectories: &[(String, Trajectory64)]) -> Verdict {
    let mut worst = 0.0f64;
    let mut detail = String::new();
    let mut pass = true;
    for (name, t) in trajectories {
        let drift = t.max_mass_drift();
        let bound = solver::MASS_DRIFT_TOL * (1.0 + t.initial_mass.abs());
        if drift > worst {
            worst = drift;
            detail = format!("worst drift {drift:.3e} (bound {bound:.3e}) in `{name}`");
        }
        pass &= drift <= bound;
    }
    if detail.is_empty() {
        detail = "no trajectories".into();
        pass = false;
    }
    Verdict::new("mass-conservation", pass, detail)
}

fn ratio_verdict(name: &str, series: &[(f64, f64)], rel_slack: f64, max_final_ratio: f64) -> Vec<Verdict> {
    let values: Vec<f64> = series.iter().map(|&(_, v)| v).collect();
    let monotone = values
        .windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + rel_slack));
    let ratio = values.last().unwrap() / values.first().unwrap();
    vec![
        Verdict::new(
            &format!("{name}-decreasing"),
            monotone,
            format!("sequence of {} scaled distances, first {:.4e}, last {:.4e}", values.len(), values[0], values[values.len() - 1]),
        ),
        Verdict::new(
            &format!("{name}-final-ratio"),
            ratio < max_final_ratio,
            format!("final/initial = {ratio:.3} (require < {max_final_ratio})"),
        ),
    ]
}

fn grad_sup_series(t: &Trajectory64) -> Vec<(f64, f64)> {
    t.snapshots
        .iter()
        .map(|s| (s.stats.t, s.field.derivative().max_abs()))
        .collect()
}

fn linf_series(t: &Trajectory64) -> Vec<(f64, f64)> {
    t.snapshots.iter().map(|s| (s.stats.t, s.stats.linf)).collect()
}

fn l1_series(t: &Trajectory64) -> Vec<f64> {
    t.snapshots.iter().map(|s| s.stats.l1).collect()
}

// ------------------------------------------------------------- scenarios

/// Linear heat equation: convergence of the solver to the kernel at second
/// order, attraction of general mass-M data to the mass-weighted kernel, and
/// the extra decay of zero-mass data.
fn heat_asymptotics(o: &Overrides) -> anyhow::Result<ScenarioOutcome> {
    let mut verdicts = Vec::new();
    let mut fits = Vec::new();
    let mut curves = Vec::new();

    // solver-vs-kernel convergence order across one dx,dt halving
    let kernel_run = |n: usize, dt: f64| -> anyhow::Result<(Trajectory64, f64)> {
        let grid = Grid64::symmetric(40.0, n)?;
        let u0 = exact::heat_kernel_field(&grid, 1.0)?;
        let u0 = Field::new(grid.clone(), u0.values().to_vec(), 0.0, Frame::Physical)?;
        let config = RunConfig {
            grid,
            nonlinearity: Nonlinearity::none(),
            initial_data: InitialData::Gaussian { mass: 1.0, width: 1.0, center: 0.0 },
            t_end: 1.0,
            dt,
            frame: Frame::Physical,
            scheme: Scheme::ImexCn,
            cadence: Cadence::EveryKSteps((1.0 / dt).round() as usize),
            grow_domain: false,
        };
        let traj = solver::run_from(&config, u0)?;
        let last = &traj.snapshots.last().unwrap().field;
        let reference = exact::heat_kernel_field(last.grid(), 2.0)?;
        let err = sup_distance(last, &reference);
        Ok((traj, err))
    };
    let (_, e_coarse) = kernel_run(1025, 2e-3)?;
    let (_, e_fine) = kernel_run(2049, 1e-3)?;
    let order = (e_coarse / e_fine).log2();
    verdicts.push(Verdict::new(
        "solver-order",
        (1.8..=2.2).contains(&order),
        format!("observed order {order:.3} from sup errors {e_coarse:.3e} -> {e_fine:.3e}"),
    ));

    let (reference_traj, e_abs) = kernel_run(o.n.unwrap_or(4097), o.dt.unwrap_or(5e-4))?;
    verdicts.push(Verdict::new(
        "solver-sup-error",
        e_abs < 1e-5,
        format!("sup error {e_abs:.3e} at t = 1 (require < 1e-5)"),
    ));

    // attraction of mixed-sign mass-1 data to the mass-weighted kernel
    let grid = Grid64::symmetric(90.0, 4097)?;
    let mixed = InitialData::TwoGaussians {
        masses: [2.0, -1.0],
        widths: [0.7, 0.5],
        centers: [0.1, -0.2],
    };
    let u0 = make_initial(&mixed, &grid)?;
    let times = [1.0, 4.0, 16.0, 64.0];
    for p in [Exponent::ONE, Exponent::TWO, Exponent::INF] {
        let mut series = Vec::new();
        for &t in &times {
            let u = exact::heat_solution(&u0, t)?;
            let kernel = exact::heat_kernel_field(&grid, t)?;
            let d = lp_distance(&u, &kernel, p)?;
            series.push((t, t.powf(0.5 * p.conjugate_deficit()) * d));
        }
        let strict = series.windows(2).all(|w| w[1].1 < w[0].1);
        let ratio = series.last().unwrap().1 / series[0].1;
        verdicts.push(Verdict::new(
            &format!("kernel-attraction-p{}", p.label()),
            strict && ratio < 0.15,
            format!(
                "scaled distance strictly decreasing: {strict}, final/initial {ratio:.3} (require < 0.15)"
            ),
        ));
        curves.push(TableFile::attractor_curve(
            &format!("kernel_attraction_p{}", p.label()),
            &series,
            0.5 * p.conjugate_deficit(),
        ));
    }

    // zero-mass data with a first moment decays one extra half power
    let dipole = make_initial(&InitialData::Dipole { amplitude: 1.0, separation: 2.0 }, &grid)?;
    let mut sup_series = Vec::new();
    for i in 0..9 {
        let t = 10.0 * (10.0f64).powf(i as f64 / 8.0);
        let u = exact::heat_solution(&dipole, t)?;
        sup_series.push((t, lp_norm(&u, Exponent::INF)?));
    }
    let fit = fit_decay(&sup_series, (10.0, 100.0), "zero-mass sup norm", "inf", -1.0, 0.10)?;
    fits.push(fit);
    curves.push(TableFile::curve("zero_mass_sup", &sup_series));

    let trajectories = vec![("heat-kernel-run".to_string(), reference_traj)];
    verdicts.push(mass_verdict(&trajectories));

    let config_echo = {
        let grid = Grid64::symmetric(40.0, o.n.unwrap_or(4097))?;
        RunConfig {
            grid,
            nonlinearity: Nonlinearity64::none(),
            initial_data: mixed,
            t_end: 1.0,
            dt: o.dt.unwrap_or(5e-4),
            frame: Frame::Physical,
            scheme: Scheme::ImexCn,
            cadence: Cadence::EveryKSteps(1),
            grow_domain: false,
        }
    };
    let report = ScenarioReport {
        scenario: Scenario::HeatAsymptotics.name().into(),
        laws: vec![
            "scaled distance t^((1/2)(1-1/p)) ||u(t) - M G(t)||_p vanishes for integrable data".into(),
            "zero-mass data with a first moment decays a half power faster than the kernel".into(),
            "the Crank-Nicolson solver converges to the kernel at second order".into(),
        ],
        config: resolved(Scenario::HeatAsymptotics, &config_echo, None, 1.0),
        verdicts,
        decay_fits: fits,
        all_pass: false,
    }
    .finish();
    Ok(ScenarioOutcome { report, trajectories, curves, extras: vec![] })
}

/// Linear convection: the drift shift reduces the run to pure diffusion and
/// the attractor is the kernel seen in the moving frame.
fn linear_convection(o: &Overrides) -> anyhow::Result<ScenarioOutcome> {
    let n = o.n.unwrap_or(2049);
    let grid = Grid64::symmetric(40.0, n)?;
    let nl = Nonlinearity64::linear(1.0);
    let config = RunConfig {
        grid: grid.clone(),
        nonlinearity: nl.clone(),
        initial_data: InitialData::Gaussian { mass: 1.0, width: 1.0, center: 0.0 },
        t_end: o.t_end.unwrap_or(4.0),
        dt: o.dt.unwrap_or(1e-3),
        frame: Frame::Physical,
        scheme: Scheme::ImexCn,
        cadence: Cadence::log_spaced(0.5, o.t_end.unwrap_or(4.0), 7),
        grow_domain: false,
    };
    let traj = solver::run(&config)?;
    let mut verdicts = Vec::new();

    // the shifted trajectory is the pure heat evolution
    let shifted = drift_extract_and_shift(&traj, &nl)?;
    let u0 = make_initial(&config.initial_data, &grid)?;
    let mut worst = 0.0f64;
    for snap in &shifted.snapshots {
        let heat = exact::heat_solution(&u0, snap.stats.t)?;
        worst = worst.max(lp_distance(&snap.field, &heat, Exponent::ONE)?);
    }
    verdicts.push(Verdict::new(
        "drift-shift-matches-heat",
        worst < 5e-4,
        format!("max L1 distance between shifted run and heat evolution: {worst:.3e}"),
    ));

    // attraction toward the kernel in the moving frame
    let regime = RegimeSpec::classify(&nl, 1).map_err(|e| anyhow!(e.to_string()))?;
    let distances = attractor_distance(&traj, &regime, Exponent::ONE, &nl, None)
        .map_err(|e| anyhow!(e.to_string()))?;
    let vals: Vec<f64> = distances.iter().map(|&(_, v)| v).collect();
    verdicts.push(Verdict::new(
        "moving-kernel-attraction",
        is_nonincreasing(&vals, 1e-8),
        format!("moving-frame kernel distance from {:.3e} to {:.3e}", vals[0], vals[vals.len() - 1]),
    ));

    let trajectories = vec![("linear-convection-run".to_string(), traj)];
    verdicts.push(mass_verdict(&trajectories));

    let report = ScenarioReport {
        scenario: Scenario::LinearConvection.name().into(),
        laws: vec![
            "with flux F(u) = u the change of frame x -> x - a t removes convection entirely".into(),
        ],
        config: resolved(Scenario::LinearConvection, &config, Some(1.0), 1.0),
        verdicts,
        decay_fits: vec![],
        all_pass: false,
    }
    .finish();
    Ok(ScenarioOutcome {
        report,
        trajectories,
        curves: vec![TableFile::attractor_curve("moving_kernel_distance", &distances, 0.0)],
        extras: vec![],
    })
}

/// Quadratic flux: the IMEX solver against the exact solution obtained by the
/// exponential substitution.
fn burgers_hopfcole(o: &Overrides) -> anyhow::Result<ScenarioOutcome> {
    let mut verdicts = Vec::new();
    let mut curves = Vec::new();

    let run_and_compare = |half_width: f64,
                           n: usize,
                           dt: f64,
                           t_end: f64|
     -> anyhow::Result<(Trajectory64, Vec<(f64, f64)>)> {
        let grid = Grid64::symmetric(half_width, n)?;
        let config = RunConfig {
            grid: grid.clone(),
            nonlinearity: Nonlinearity::power_law(2.0, 1.0).map_err(|e| anyhow!(e.to_string()))?,
            initial_data: InitialData::Gaussian { mass: o.mass.unwrap_or(1.0), width: 1.0, center: 0.0 },
            t_end,
            dt,
            frame: Frame::Physical,
            scheme: Scheme::ImexCn,
            cadence: Cadence::log_spaced(t_end / 10.0, t_end, 5),
            grow_domain: false,
        };
        let traj = solver::run(&config)?;
        let u0 = make_initial(&config.initial_data, &grid)?;
        let mut errors = Vec::new();
        for snap in &traj.snapshots {
            let reference = exact::burgers_exact(&u0, snap.stats.t)?;
            errors.push((snap.stats.t, lp_distance(&snap.field, &reference, Exponent::ONE)?));
        }
        Ok((traj, errors))
    };

    let n = o.n.unwrap_or(2048);
    let (traj1, errors1) = run_and_compare(20.0, n, o.dt.unwrap_or(2e-4), 1.0)?;
    let e1 = errors1.last().unwrap().1;
    verdicts.push(Verdict::new(
        "exact-agreement-t1",
        e1 < 1e-4,
        format!("L1 error vs exact solution at t = 1: {e1:.3e} (require < 1e-4, n = {n})"),
    ));
    curves.push(TableFile::curve("solver_vs_exact_l1_t1", &errors1));

    let t_end = o.t_end.unwrap_or(10.0);
    let (traj10, errors10) = run_and_compare(40.0, n, 5e-4, t_end)?;
    let e10 = errors10.last().unwrap().1;
    verdicts.push(Verdict::new(
        "exact-agreement-t10",
        e10 < 1e-3,
        format!("L1 error vs exact solution at t = {t_end}: {e10:.3e} (require < 1e-3)"),
    ));
    curves.push(TableFile::curve("solver_vs_exact_l1_t10", &errors10));

    // L1 never grows along either run
    let monotone =
        is_nonincreasing(&l1_series(&traj1), 1e-8) && is_nonincreasing(&l1_series(&traj10), 1e-8);
    verdicts.push(Verdict::new("l1-nonincreasing", monotone, "||u(t)||_1 along both runs".into()));

    let trajectories =
        vec![("burgers-t1".to_string(), traj1), ("burgers-t10".to_string(), traj10)];
    verdicts.push(mass_verdict(&trajectories));

    let config_echo = RunConfig {
        grid: Grid64::symmetric(20.0, n)?,
        nonlinearity: Nonlinearity::power_law(2.0, 1.0).map_err(|e| anyhow!(e.to_string()))?,
        initial_data: InitialData::Gaussian { mass: o.mass.unwrap_or(1.0), width: 1.0, center: 0.0 },
        t_end: 1.0,
        dt: o.dt.unwrap_or(2e-4),
        frame: Frame::Physical,
        scheme: Scheme::ImexCn,
        cadence: Cadence::EveryKSteps(1),
        grow_domain: false,
    };
    let report = ScenarioReport {
        scenario: Scenario::BurgersHopfCole.name().into(),
        laws: vec![
            "the exponential substitution linearizes the quadratic-flux equation exactly".into(),
        ],
        config: resolved(Scenario::BurgersHopfCole, &config_echo, Some(2.0), o.mass.unwrap_or(1.0)),
        verdicts,
        decay_fits: vec![],
        all_pass: false,
    }
    .finish();
    Ok(ScenarioOutcome { report, trajectories, curves, extras: vec![] })
}

/// Similarity-frame heat equation: eigenstructure residuals, spectral-vs-
/// timestepper agreement, and the exponential decay of zero-mass data.
fn similarity_spectral(o: &Overrides) -> anyhow::Result<ScenarioOutcome> {
    let n = o.n.unwrap_or(8193);
    let grid = Grid64::symmetric(12.0, n)?;
    let basis = WeightedBasis::new(grid.clone(), spectral::DEFAULT_ORDER)
        .map_err(|e| anyhow!(e.to_string()))?;
    let mut verdicts = Vec::new();
    let mut curves = Vec::new();

    // eigen-residuals of the finite-difference operator
    let mut worst_resid = 0.0f64;
    for l in 1..=6 {
        let phi = basis.function_field(l).map_err(|e| anyhow!(e.to_string()))?;
        let lphi = spectral::apply_l_operator(&phi);
        let mu = basis.eigenvalue(l);
        let resid = Field::new(
            grid.clone(),
            lphi.values().iter().zip(phi.values()).map(|(&a, &p)| a - mu * p).collect(),
            0.0,
            Frame::Similarity,
        )
        .map_err(|e| anyhow!(e.to_string()))?;
        let rel = spectral::k_norm_raw(&resid) / spectral::k_norm_raw(&phi);
        worst_resid = worst_resid.max(rel);
    }
    verdicts.push(Verdict::new(
        "eigen-residuals",
        worst_resid < 1e-4,
        format!("worst relative K-norm residual over the first 6 modes: {worst_resid:.3e}"),
    ));

    // spectral evolution against the timestepper at s = 5, no convection
    let u0 = Field::from_fn(grid.clone(), 0.0, Frame::Similarity, |y: f64| {
        (-y * y / 2.0).exp() * (1.0 + 0.2 * y)
    })
    .map_err(|e| anyhow!(e.to_string()))?;
    let s_end = 5.0;
    let config = RunConfig {
        grid: grid.clone(),
        nonlinearity: Nonlinearity::none(),
        initial_data: InitialData::Gaussian { mass: 1.0, width: 1.0, center: 0.0 },
        t_end: s_end,
        dt: o.dt.unwrap_or(2e-3),
        frame: Frame::Similarity,
        scheme: Scheme::ImexCn,
        cadence: Cadence::AtTimes(vec![1.0, s_end]),
        grow_domain: false,
    };
    let traj = solver::run_from(&config, u0.clone())?;
    let coeffs = spectral::project_all(&u0, &basis).map_err(|e| anyhow!(e.to_string()))?;
    let mut worst_spectral = 0.0f64;
    for snap in &traj.snapshots {
        let evolved =
            spectral::evolve_spectral(&coeffs, &basis, snap.stats.t).map_err(|e| anyhow!(e.to_string()))?;
        let reconstructed =
            spectral::reconstruct(&evolved, &basis).map_err(|e| anyhow!(e.to_string()))?;
        let d = lp_distance(&snap.field, &reconstructed, Exponent::ONE)?;
        worst_spectral = worst_spectral.max(d);
    }
    verdicts.push(Verdict::new(
        "spectral-vs-timestepper",
        worst_spectral < 1e-5,
        format!("L1 disagreement at s in {{1, 5}}: {worst_spectral:.3e} (require < 1e-5)"),
    ));

    // zero-mass data decays in K-norm at rate 1/2
    let dipole = make_initial(&InitialData::Dipole { amplitude: 1.0, separation: 2.0 }, &grid)?;
    let dipole = Field::new(grid.clone(), dipole.values().to_vec(), 0.0, Frame::Similarity)
        .map_err(|e| anyhow!(e.to_string()))?;
    let config = RunConfig {
        grid: grid.clone(),
        nonlinearity: Nonlinearity::none(),
        initial_data: InitialData::Dipole { amplitude: 1.0, separation: 2.0 },
        t_end: 8.0,
        dt: o.dt.unwrap_or(2e-3),
        frame: Frame::Similarity,
        scheme: Scheme::ImexCn,
        cadence: Cadence::EveryKSteps((0.5 / o.dt.unwrap_or(2e-3)).round() as usize),
        grow_domain: false,
    };
    let ztraj = solver::run_from(&config, dipole.clone())?;
    let knorm0 = spectral::k_norm(&dipole).map_err(|e| anyhow!(e.to_string()))?;
    let mut kseries = Vec::new();
    let mut bound_ok = true;
    for snap in &ztraj.snapshots {
        if snap.stats.t == 0.0 {
            continue;
        }
        let k = spectral::k_norm(&snap.field).map_err(|e| anyhow!(e.to_string()))?;
        kseries.push((snap.stats.t, k));
        bound_ok &= k <= knorm0 * (-snap.stats.t / 2.0).exp() * (1.0 + 1e-6);
    }
    let rate = fit_exponential_rate(&kseries).map_err(|e| anyhow!(e.to_string()))?;
    verdicts.push(Verdict::new(
        "zero-mass-k-rate",
        (rate + 0.5).abs() <= 0.05,
        format!("fitted exponential rate {rate:.4} (target -0.5, tolerance 10%)"),
    ));
    verdicts.push(Verdict::new(
        "zero-mass-k-bound",
        bound_ok,
        format!("||v(s)||_K <= e^(-s/2) ||v(0)||_K along the run (||v(0)||_K = {knorm0:.4})"),
    ));
    curves.push(TableFile::curve("zero_mass_k_norm", &kseries));

    let basis_table = TableFile {
        name: "basis".into(),
        header: {
            let cols: Vec<String> = (1..=basis.order()).map(|l| format!("phi_{l}")).collect();
            format!("y,{}", cols.join(","))
        },
        rows: (0..grid.len())
            .map(|i| {
                let mut row = Vec::with_capacity(basis.order() + 1);
                row.push(grid.node(i));
                row.extend((1..=basis.order()).map(|l| basis.function(l)[i]));
                row
            })
            .collect(),
    };

    let trajectories = vec![("similarity-heat".to_string(), traj), ("zero-mass".to_string(), ztraj)];
    verdicts.push(mass_verdict(&trajectories));

    let report = ScenarioReport {
        scenario: Scenario::SimilaritySpectral.name().into(),
        laws: vec![
            "the similarity-frame heat equation diagonalizes in the weighted Hermite basis".into(),
            "everything orthogonal to the mass mode dies like e^(-s/2)".into(),
        ],
        config: resolved(Scenario::SimilaritySpectral, &config, None, 0.0),
        verdicts,
        decay_fits: vec![],
        all_pass: false,
    }
    .finish();
    Ok(ScenarioOutcome { report, trajectories, curves, extras: vec![basis_table] })
}

/// L^p decay of the power-law equation: sup-norm rate -1/2 for q >= 2 and
/// gradient rate -1 for the quadratic flux.
fn decay_suite(o: &Overrides) -> anyhow::Result<ScenarioOutcome> {
    let mut verdicts = Vec::new();
    let mut fits = Vec::new();
    let mut curves = Vec::new();
    let mut trajectories = Vec::new();

    let t_end = o.t_end.unwrap_or(100.0);
    let window = (t_end / 10.0, t_end);
    let qs: Vec<f64> = match o.q {
        Some(q) => vec![q],
        None => vec![2.0, 3.0],
    };
    for &q in &qs {
        let grid = Grid64::symmetric(100.0, o.n.unwrap_or(4097))?;
        let config = RunConfig {
            grid,
            nonlinearity: Nonlinearity::power_law(q, 1.0).map_err(|e| anyhow!(e.to_string()))?,
            initial_data: InitialData::Gaussian { mass: o.mass.unwrap_or(1.0), width: 1.0, center: 0.0 },
            t_end,
            dt: o.dt.unwrap_or(0.01),
            frame: Frame::Physical,
            scheme: Scheme::ImexCn,
            cadence: Cadence::log_spaced(1.0, t_end, 17),
            grow_domain: false,
        };
        let traj = solver::run(&config)?;

        let sup = linf_series(&traj);
        fits.push(fit_decay(&sup, window, &format!("sup norm, q = {q}"), "inf", -0.5, 0.10)?);
        curves.push(TableFile::curve(&format!("sup_norm_q{q}"), &sup));

        verdicts.push(Verdict::new(
            &format!("l1-nonincreasing-q{q}"),
            is_nonincreasing(&l1_series(&traj), 1e-8),
            "||u(t)||_1 never grows".into(),
        ));

        if q == 2.0 {
            let grad = grad_sup_series(&traj);
            fits.push(fit_decay(&grad, window, "gradient sup norm, q = 2", "inf", -1.0, 0.15)?);
            curves.push(TableFile::curve("grad_sup_norm_q2", &grad));
        }
        trajectories.push((format!("decay-q{q}"), traj));
    }
    verdicts.push(mass_verdict(&trajectories));

    let config_echo = RunConfig {
        grid: Grid64::symmetric(100.0, o.n.unwrap_or(4097))?,
        nonlinearity: Nonlinearity::power_law(qs[0], 1.0).map_err(|e| anyhow!(e.to_string()))?,
        initial_data: InitialData::Gaussian { mass: o.mass.unwrap_or(1.0), width: 1.0, center: 0.0 },
        t_end,
        dt: o.dt.unwrap_or(0.01),
        frame: Frame::Physical,
        scheme: Scheme::ImexCn,
        cadence: Cadence::EveryKSteps(1),
        grow_domain: false,
    };
    let report = ScenarioReport {
        scenario: Scenario::DecaySuite.name().into(),
        laws: vec![
            "solutions decay like the kernel: ||u(t)||_inf ~ t^(-1/2) for q >= 2 in one dimension".into(),
            "gradients decay one half power faster than the solution".into(),
        ],
        config: resolved(Scenario::DecaySuite, &config_echo, Some(qs[0]), o.mass.unwrap_or(1.0)),
        verdicts,
        decay_fits: fits,
        all_pass: false,
    }
    .finish();
    Ok(ScenarioOutcome { report, trajectories, curves, extras: vec![] })
}

/// Initial data for the weak-rate checks: a kernel-width Gaussian whose
/// center offsets the first moment that the convective flux accumulates.
///
/// The flux drains `a int F(u) dx ~ a c_q (s + 1)^(-(q-1)/2)` into the first
/// moment. Below `q = 3` that integral's lower limit leaves a constant dipole
/// whose `t^(-1/2)` tail buries the `t^(-(q-1)/2 + 1/4)`-type signal on desk
/// horizons; starting the center of mass at `-a c_q / kappa`,
/// `kappa = (3 - q)/2`, cancels the constant exactly and the fitted slope
/// lands on the law within a few percent by t ~ 100.
fn weak_prepared_data(q: f64, a: f64, mass: f64) -> InitialData {
    let center = if q < 3.0 {
        let c_q = mass.abs().powf(q) * (4.0 * std::f64::consts::PI).powf(-(q - 1.0) / 2.0) / q.sqrt();
        let kappa = (3.0 - q) / 2.0;
        -a * c_q / kappa
    } else {
        0.0
    };
    InitialData::Gaussian { mass, width: std::f64::consts::SQRT_2, center }
}

/// Weakly nonlinear corrections: the distance to the mass-weighted kernel
/// decays at the three-case rate determined by q.
fn weak_nonlinear(o: &Overrides) -> anyhow::Result<ScenarioOutcome> {
    let mut fits = Vec::new();
    let mut curves = Vec::new();
    let mut trajectories = Vec::new();

    let t_end = o.t_end.unwrap_or(400.0);
    let window = (t_end / 10.0, t_end);
    let mass = o.mass.unwrap_or(1.0);
    let qs: Vec<f64> = match o.q {
        Some(q) => vec![q],
        None => vec![2.5, 3.0, 4.0],
    };
    for &q in &qs {
        let grid = Grid64::symmetric(40.0, o.n.unwrap_or(1025))?;
        let nl = Nonlinearity::power_law(q, 1.0).map_err(|e| anyhow!(e.to_string()))?;
        let config = RunConfig {
            grid,
            nonlinearity: nl.clone(),
            initial_data: weak_prepared_data(q, 1.0, mass),
            t_end,
            dt: o.dt.unwrap_or(0.01),
            frame: Frame::Physical,
            scheme: Scheme::ImexCn,
            cadence: Cadence::log_spaced(1.0, t_end, 25),
            grow_domain: true,
        };
        let traj = solver::run(&config)?;
        let fit = weak_rate_check(&traj, q, Exponent::ONE, &nl, window)
            .map_err(|e| anyhow!(e.to_string()))?;
        curves.push(TableFile::curve(&format!("gaussian_correction_q{q}"), &fit.samples));
        fits.push(fit);
        trajectories.push((format!("weak-q{q}"), traj));
    }
    let verdicts = vec![mass_verdict(&trajectories)];

    let config_echo = RunConfig {
        grid: Grid64::symmetric(40.0, o.n.unwrap_or(1025))?,
        nonlinearity: Nonlinearity::power_law(qs[0], 1.0).map_err(|e| anyhow!(e.to_string()))?,
        initial_data: weak_prepared_data(qs[0], 1.0, mass),
        t_end,
        dt: o.dt.unwrap_or(0.01),
        frame: Frame::Physical,
        scheme: Scheme::ImexCn,
        cadence: Cadence::EveryKSteps(1),
        grow_domain: true,
    };
    let report = ScenarioReport {
        scenario: Scenario::WeakNonlinear.name().into(),
        laws: vec![
            "above the critical exponent the correction to the kernel decays at a q-dependent rate with three cases".into(),
        ],
        config: resolved(Scenario::WeakNonlinear, &config_echo, Some(qs[0]), mass),
        verdicts,
        decay_fits: fits,
        all_pass: false,
    }
    .finish();
    Ok(ScenarioOutcome { report, trajectories, curves, extras: vec![] })
}

/// Critical exponent q = 2 in one dimension: the similarity flow settles on
/// the closed-form profile family and physical runs converge to the
/// self-similar solution.
fn self_similar_critical(o: &Overrides) -> anyhow::Result<ScenarioOutcome> {
    let mut verdicts = Vec::new();
    let mut curves = Vec::new();
    let mut trajectories = Vec::new();

    // dynamical steady state vs closed form, three masses
    let masses = [0.5, o.mass.unwrap_or(1.0), 2.0];
    let grid = Grid64::symmetric(12.0, o.n.unwrap_or(4097))?;
    for &mass in &masses {
        let config = RunConfig {
            grid: grid.clone(),
            nonlinearity: Nonlinearity::power_law(2.0, 1.0).map_err(|e| anyhow!(e.to_string()))?,
            initial_data: InitialData::Gaussian { mass, width: 1.0, center: 0.0 },
            t_end: o.t_end.unwrap_or(25.0),
            dt: o.dt.unwrap_or(2.5e-3),
            frame: Frame::Similarity,
            scheme: Scheme::ImexCn,
            cadence: Cadence::EveryKSteps((o.t_end.unwrap_or(25.0) / o.dt.unwrap_or(2.5e-3)).round()
                as usize),
            grow_domain: false,
        };
        let traj = solver::run(&config)?;
        let steady = &traj.snapshots.last().unwrap().field;
        let profile =
            exact::burgers_profile_field(&grid, mass).map_err(|e| anyhow!(e.to_string()))?;
        let d = lp_distance(steady, &profile, Exponent::ONE)?;
        verdicts.push(Verdict::new(
            &format!("steady-state-profile-M{mass}"),
            d < 1e-4,
            format!("L1 distance of the similarity steady state to the closed form: {d:.3e}"),
        ));
        trajectories.push((format!("similarity-M{mass}"), traj));
    }

    // closed-form family: positivity and monotonicity in the mass
    let fine = Grid64::symmetric(15.0, 2048)?;
    let profiles: Vec<Field64> = masses
        .iter()
        .map(|&m| exact::burgers_profile_field(&fine, m))
        .collect::<Result<_, _>>()
        .map_err(|e| anyhow!(e.to_string()))?;
    let positive = profiles.iter().all(|f| f.values().iter().all(|&v| v > 0.0));
    verdicts.push(Verdict::new(
        "profile-positivity",
        positive,
        format!("profiles for M in {masses:?} are positive at every node"),
    ));
    let monotone = profiles.windows(2).all(|w| {
        w[0].values().iter().zip(w[1].values()).all(|(&lo, &hi)| hi > lo)
    });
    verdicts.push(Verdict::new(
        "profile-mass-monotonicity",
        monotone,
        format!("f_M grows pointwise with M over {masses:?}"),
    ));

    // physical run attracted by the self-similar solution; the Gaussian data
    // starts with its center of mass on the profile's (the profile leans to
    // the left of the origin), so the slowly decaying dipole mismatch does
    // not bury the attraction on a two-decade horizon
    let t_end = 100.0;
    let run_mass = o.mass.unwrap_or(1.0);
    let center = {
        let probe = Grid64::symmetric(15.0, 8193)?;
        let f = exact::burgers_profile_field(&probe, run_mass)?;
        let moments: Vec<f64> =
            (0..probe.len()).map(|i| probe.node(i) * f.values()[i]).collect();
        cdasym_core::quadrature::trapezoid(&moments, probe.dx()) / run_mass
    };
    let pgrid = Grid64::symmetric(100.0, 4097)?;
    let nl = Nonlinearity::power_law(2.0, 1.0).map_err(|e| anyhow!(e.to_string()))?;
    let config = RunConfig {
        grid: pgrid,
        nonlinearity: nl.clone(),
        initial_data: InitialData::Gaussian {
            mass: run_mass,
            width: std::f64::consts::SQRT_2,
            center,
        },
        t_end,
        dt: 0.01,
        frame: Frame::Physical,
        scheme: Scheme::ImexCn,
        cadence: Cadence::log_spaced(1.0, t_end, 17),
        grow_domain: false,
    };
    let ptraj = solver::run(&config)?;
    let regime = RegimeSpec::from_q(2.0, 1).map_err(|e| anyhow!(e.to_string()))?;
    for p in [Exponent::ONE, Exponent::INF] {
        let distances = attractor_distance(&ptraj, &regime, p, &nl, None)
            .map_err(|e| anyhow!(e.to_string()))?;
        let mut vs = ratio_verdict(
            &format!("profile-attraction-p{}", p.label()),
            &distances,
            0.02,
            1.0,
        );
        // final absolute value requirement only for p = 1
        if p == Exponent::ONE {
            let last = distances.last().unwrap().1;
            vs.push(Verdict::new(
                "profile-attraction-final-p1",
                last < 1e-2,
                format!("final scaled distance {last:.3e} (require < 1e-2)"),
            ));
        }
        verdicts.append(&mut vs);
        curves.push(TableFile::attractor_curve(
            &format!("profile_attraction_p{}", p.label()),
            &distances,
            regime.gamma(p),
        ));
    }
    trajectories.insert(0, ("critical-physical".to_string(), ptraj));
    verdicts.push(mass_verdict(&trajectories));

    let report = ScenarioReport {
        scenario: Scenario::SelfSimilarCritical.name().into(),
        laws: vec![
            "at the critical exponent a one-parameter family of self-similar profiles attracts all solutions of the same mass".into(),
        ],
        config: resolved(Scenario::SelfSimilarCritical, &config, Some(2.0), o.mass.unwrap_or(1.0)),
        verdicts,
        decay_fits: vec![],
        all_pass: false,
    }
    .finish();
    Ok(ScenarioOutcome { report, trajectories, curves, extras: vec![] })
}

/// Strongly nonlinear regime (1 < q < 2): entropy bound, sup bound, the
/// faster t^(-1/q) decay, and attraction to the source-type wave.
fn nwave_strong(o: &Overrides) -> anyhow::Result<ScenarioOutcome> {
    let q = o.q.unwrap_or(1.5);
    if !(q > 1.0 && q < 2.0) {
        return Err(anyhow!("strong regime needs 1 < q < 2, got {q}"));
    }
    // the wave's convection-diffusion balance r(t) * sup(t) is constant in
    // time and proportional to the mass, so only a heavy wave outruns its own
    // viscosity on desk horizons
    let mass = o.mass.unwrap_or(200.0);
    let a = -1.0 / q;
    let nl = Nonlinearity::power_law(q, a).map_err(|e| anyhow!(e.to_string()))?;
    let mut verdicts = Vec::new();
    let mut fits = Vec::new();
    let mut curves = Vec::new();

    // the wave runs right while the viscous left tail spreads like sqrt(t);
    // the domain grows as needed to keep the boundary guard honest
    let t_end = o.t_end.unwrap_or(200.0);
    let grid = Grid64::new(-30.0, 80.0, o.n.unwrap_or(1024))?;
    let dt = o.dt.unwrap_or(2e-3);
    let config = RunConfig {
        grid: grid.clone(),
        nonlinearity: nl.clone(),
        initial_data: InitialData::Gaussian { mass, width: 0.5, center: 0.0 },
        t_end,
        dt,
        frame: Frame::Physical,
        scheme: Scheme::UpwindExplicit,
        cadence: Cadence::log_spaced(1.0, t_end, 13),
        grow_domain: true,
    };
    let traj = solver::run(&config)?;

    // faster decay: sup norm like t^(-1/q)
    let sup = linf_series(&traj);
    fits.push(fit_decay(
        &sup,
        (t_end / 10.0, t_end),
        &format!("sup norm, strong regime q = {q}"),
        "inf",
        -1.0 / q,
        0.10,
    )?);
    curves.push(TableFile::curve("sup_norm_strong", &sup));

    // one-sided entropy bound with a grid term that halves under refinement
    let entropy_excess = |t: &Trajectory64| -> f64 {
        t.snapshots
            .iter()
            .filter(|s| s.stats.t >= 1.0)
            .map(|s| entropy_slope_max(&s.field, q) - 1.0 / s.stats.t)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let eps_run = entropy_excess(&traj).max(0.0);
    let refine = |n: usize| -> anyhow::Result<f64> {
        let grid = Grid64::new(-15.0, 20.0, n)?;
        let dt = 0.18 * grid.dx() * grid.dx();
        let steps = (8.0 / dt).ceil() as usize;
        let config = RunConfig {
            grid,
            nonlinearity: nl.clone(),
            initial_data: InitialData::Gaussian { mass, width: 1.0, center: 0.0 },
            t_end: steps as f64 * dt,
            dt,
            frame: Frame::Physical,
            scheme: Scheme::UpwindExplicit,
            cadence: Cadence::AtTimes(vec![1.0, 2.0, 4.0, 8.0]),
            grow_domain: true,
        };
        Ok(entropy_excess(&solver::run(&config)?))
    };
    let (eps_coarse, eps_fine) = (refine(1024)?, refine(2048)?);
    let halves = (eps_coarse > 0.0 && eps_fine > 0.0 && eps_coarse / eps_fine >= 1.5)
        || eps_coarse.max(eps_fine) < 1e-4;
    verdicts.push(Verdict::new(
        "entropy-bound",
        eps_run <= eps_coarse.max(eps_fine).max(1e-4) * 1.5,
        format!("max slope of u^(q-1) minus 1/t along the run: {eps_run:.3e}"),
    ));
    verdicts.push(Verdict::new(
        "entropy-grid-term-halves",
        halves,
        format!("entropy excess {eps_coarse:.3e} (n = 1024) vs {eps_fine:.3e} (n = 2048)"),
    ));

    // sup bound with 2% headroom
    let wave = exact::NWave::new(q, mass).map_err(|e| anyhow!(e.to_string()))?;
    let mut bound_ok = true;
    let mut worst_excess = 0.0f64;
    for s in traj.snapshots.iter().filter(|s| s.stats.t >= 1.0) {
        let bound = wave.sup(s.stats.t) * 1.02;
        worst_excess = worst_excess.max(s.stats.linf / wave.sup(s.stats.t) - 1.0);
        bound_ok &= s.stats.linf <= bound;
    }
    verdicts.push(Verdict::new(
        "sup-bound",
        bound_ok,
        format!("worst sup-norm excess over (q M / ((q-1) t))^(1/q): {:.2}%", worst_excess * 100.0),
    ));

    // attraction to the source-type wave
    let regime = RegimeSpec::from_q(q, 1).map_err(|e| anyhow!(e.to_string()))?;
    let distances = attractor_distance(&traj, &regime, Exponent::ONE, &nl, None)
        .map_err(|e| anyhow!(e.to_string()))?;
    verdicts.append(&mut ratio_verdict("wave-attraction", &distances, 0.02, 0.3));
    curves.push(TableFile::attractor_curve("wave_attraction_p1", &distances, 0.0));

    // reference wave samples on the final grid, in the x,u,t layout
    let final_snap = traj.snapshots.last().expect("run emits snapshots");
    let wave_table = {
        let g = final_snap.field.grid();
        let t = final_snap.stats.t;
        TableFile {
            name: "nwave_reference".into(),
            header: "x,u,t".into(),
            rows: (0..g.len())
                .map(|i| {
                    let x = g.node(i);
                    vec![x, wave.value(x, t).unwrap_or(0.0), t]
                })
                .collect(),
        }
    };

    let trajectories = vec![("nwave-strong".to_string(), traj)];
    verdicts.push(mass_verdict(&trajectories));

    let report = ScenarioReport {
        scenario: Scenario::NwaveStrong.name().into(),
        laws: vec![
            "below the critical exponent diffusion dies out and source-type waves attract".into(),
            "nonnegative solutions obey the one-sided entropy bound d/dx u^(q-1) <= 1/t".into(),
        ],
        config: resolved(Scenario::NwaveStrong, &config, Some(q), mass),
        verdicts,
        decay_fits: fits,
        all_pass: false,
    }
    .finish();
    Ok(ScenarioOutcome { report, trajectories, curves, extras: vec![wave_table] })
}

/// L1 contraction: identical, ordered, and equal-mass data pairs.
fn contraction_suite(o: &Overrides) -> anyhow::Result<ScenarioOutcome> {
    let mut verdicts = Vec::new();
    let mut curves = Vec::new();

    // physical-frame pairs
    let grid = Grid64::symmetric(40.0, o.n.unwrap_or(2049))?;
    let config = RunConfig {
        grid: grid.clone(),
        nonlinearity: Nonlinearity::power_law(2.0, 1.0).map_err(|e| anyhow!(e.to_string()))?,
        initial_data: InitialData::Gaussian { mass: 1.0, width: 1.0, center: 0.0 },
        t_end: o.t_end.unwrap_or(1.0),
        dt: o.dt.unwrap_or(1e-3),
        frame: Frame::Physical,
        scheme: Scheme::ImexCn,
        cadence: Cadence::EveryKSteps(1),
        grow_domain: false,
    };
    let g1 = make_initial(&InitialData::Gaussian { mass: 1.0, width: 1.0, center: 0.0 }, &grid)?;
    let g2 = make_initial(&InitialData::Gaussian { mass: 2.0, width: 1.0, center: 0.0 }, &grid)?;

    let identical = solver::contraction_pair(&config, g1.clone(), g1.clone())?;
    verdicts.push(Verdict::new(
        "identical-pair-zero",
        identical.iter().all(|&(_, d)| d.abs() < 1e-12),
        format!("max distance {:.3e} for identical data", identical.iter().map(|&(_, d)| d).fold(0.0, f64::max)),
    ));

    let ordered = solver::contraction_pair(&config, g2, g1.clone())?;
    let d0 = ordered[0].1;
    let spread = ordered.iter().map(|&(_, d)| (d - d0).abs()).fold(0.0, f64::max);
    verdicts.push(Verdict::new(
        "ordered-pair-constant",
        spread < 1e-8 && (d0 - 1.0).abs() < 1e-8,
        format!("ordered pair: distance stays {d0:.8} (spread {spread:.3e})"),
    ));

    // similarity-frame equal-mass pair: strictly decreasing distance
    let ygrid = Grid64::symmetric(12.0, 2049)?;
    let sim_config = RunConfig {
        grid: ygrid.clone(),
        nonlinearity: Nonlinearity::power_law(2.0, 1.0).map_err(|e| anyhow!(e.to_string()))?,
        initial_data: InitialData::Gaussian { mass: 1.0, width: 1.0, center: 0.0 },
        t_end: 4.0,
        dt: 2.5e-3,
        frame: Frame::Similarity,
        scheme: Scheme::ImexCn,
        cadence: Cadence::EveryKSteps(1),
        grow_domain: false,
    };
    let ga = make_initial(&InitialData::Gaussian { mass: 1.0, width: 1.0, center: 0.0 }, &ygrid)?;
    let gb = make_initial(&InitialData::Box { mass: 1.0, width: 4.0 }, &ygrid)?;
    let equal_mass = solver::contraction_pair(&sim_config, ga, gb)?;
    let values: Vec<f64> = equal_mass.iter().map(|&(_, d)| d).collect();
    verdicts.push(Verdict::new(
        "equal-mass-strict-decrease",
        strictly_decreasing_windows(&values, 10, 0.0),
        format!(
            "distance falls from {:.4} to {:.4} over {} steps, strictly over 10-step windows",
            values[0],
            values[values.len() - 1],
            values.len() - 1
        ),
    ));

    let all_nonincreasing = [&identical, &ordered, &equal_mass]
        .iter()
        .all(|seq| is_nonincreasing(&seq.iter().map(|&(_, d)| d).collect::<Vec<_>>(), 1e-8));
    verdicts.push(Verdict::new(
        "pairs-nonincreasing",
        all_nonincreasing,
        "all three pairwise distances are non-increasing within 1e-8".into(),
    ));

    curves.push(TableFile::curve("equal_mass_contraction", &equal_mass));
    curves.push(TableFile::curve("ordered_contraction", &ordered));

    let report = ScenarioReport {
        scenario: Scenario::ContractionSuite.name().into(),
        laws: vec![
            "the flow contracts L1 distances; strictly for distinct equal-mass data in similarity variables".into(),
        ],
        config: resolved(Scenario::ContractionSuite, &sim_config, Some(2.0), 1.0),
        verdicts,
        decay_fits: vec![],
        all_pass: false,
    }
    .finish();
    Ok(ScenarioOutcome { report, trajectories: vec![], curves, extras: vec![] })
}
