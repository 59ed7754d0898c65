//! The four subcommands. Each returns whether every check passed; errors
//! carry their own exit code.

use std::path::Path;

use euler_lax::dynamics::{
    initial_condition, FlowState, InitialCondition, TimeStepper, ZakharovParams,
};
use euler_lax::lax::{drift_sweep, eigenfunction_transport_check, spectrum_along_flow, ModeBox};
use euler_lax::random::{random_complex, rng};
use euler_lax::transform::transform_inverse_real;
use euler_lax::verify::{
    aliased_jacobi_control, all_passed, bracket_identity_suite, compatibility_residual,
    compatibility_residual_perturbed, compatibility_trial, conservation_suite, order_study,
    stationarity_check, zakharov_residual, DriftTolerances, ResidualReport,
};
use euler_lax::{Grid, SpectralField};
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{check_json, diagnostics_csv, report_json, write_atomic, write_json};
use crate::snapshot::write_snapshot;

/// Perturbation size of the compatibility negative control.
pub const CONTROL_DELTA: f64 = 1e-3;
/// Tolerance for stationary states, compared absolutely.
pub const STATIONARY_TOLERANCE: f64 = 1e-10;

pub const SUITES: [&str; 4] = ["bracket", "compatibility", "zakharov", "conservation"];

fn setup(cfg: &RunConfig) -> Result<(Grid, SpectralField, TimeStepper), CliError> {
    let grid = Grid::new(cfg.n)?;
    let omega = initial_condition(&cfg.ic, &cfg.ic_params, grid, cfg.seed)?;
    let stepper = TimeStepper::new(cfg.dt)?;
    Ok((grid, omega, stepper))
}

fn is_stationary(cfg: &RunConfig) -> Result<bool, CliError> {
    Ok(InitialCondition::parse(&cfg.ic, &cfg.ic_params)?.is_stationary())
}

fn print_checks(checks: &[ResidualReport]) {
    for c in checks {
        println!("{c}");
    }
}

fn finish(
    cfg: &RunConfig,
    file: &str,
    name: &str,
    checks: &[ResidualReport],
    extra: Map<String, Value>,
) -> Result<bool, CliError> {
    let path = cfg.out.join(file);
    write_json(&path, &report_json(name, &cfg.resolved(), checks, extra))?;
    print_checks(checks);
    println!("report written to {}", path.display());
    Ok(all_passed(checks))
}

fn snapshot_name(index: usize) -> String {
    format!("snapshot_{index:05}.laxf")
}

pub fn simulate(cfg: &RunConfig) -> Result<bool, CliError> {
    let (_, omega, stepper) = setup(cfg)?;
    let cfl = stepper.cfl_number(&omega)?;
    let total = stepper.steps_for(cfg.t_end);
    let every = cfg
        .snapshot_interval
        .map_or(total, |s| stepper.steps_for(s))
        .max(1);

    let mut state = FlowState::new(omega);
    let mut taken = 0;
    let mut names = Vec::new();
    let mut rows = Vec::new();
    loop {
        let time = taken as f64 * stepper.dt();
        let name = snapshot_name(names.len());
        write_snapshot(
            &cfg.out.join(&name),
            time,
            &transform_inverse_real(&state.omega)?,
        )?;
        names.push(name);
        rows.push((time, euler_lax::dynamics::diagnostics(&state.omega)));
        if taken >= total {
            break;
        }
        let chunk = every.min(total - taken);
        state = stepper.advance(&state, chunk)?;
        taken += chunk;
    }
    write_atomic(
        &cfg.out.join("diagnostics.csv"),
        diagnostics_csv(&rows).as_bytes(),
    )?;
    let mut extra = Map::new();
    extra.insert("snapshots".into(), json!(names));
    extra.insert("steps".into(), json!(total));
    extra.insert("cfl".into(), json!(cfl));
    finish(cfg, "simulate.json", "simulate", &[], extra)
}

fn controls(reports: &[ResidualReport]) -> Map<String, Value> {
    let mut extra = Map::new();
    extra.insert(
        "controls".into(),
        Value::Array(reports.iter().map(check_json).collect()),
    );
    extra
}

pub fn verify(cfg: &RunConfig) -> Result<bool, CliError> {
    let suite = cfg.suite.as_deref().ok_or_else(|| {
        CliError::Usage(format!(
            "verify needs --suite, one of {}",
            SUITES.join(", ")
        ))
    })?;
    match suite {
        "bracket" => verify_bracket(cfg),
        "compatibility" => verify_compatibility(cfg),
        "zakharov" => verify_zakharov(cfg),
        "conservation" => verify_conservation(cfg),
        other => Err(CliError::Usage(format!(
            "unknown suite `{other}`, expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

fn verify_bracket(cfg: &RunConfig) -> Result<bool, CliError> {
    let grid = Grid::new(cfg.n)?;
    let checks: Vec<_> = bracket_identity_suite(grid, cfg.band, cfg.seed, cfg.trials)?
        .into_iter()
        .map(|r| r.with_tolerance(cfg.tolerance))
        .collect();
    let control = aliased_jacobi_control(grid, cfg.seed)?;
    finish(
        cfg,
        "verify-bracket.json",
        "bracket",
        &checks,
        controls(&[control]),
    )
}

fn verify_compatibility(cfg: &RunConfig) -> Result<bool, CliError> {
    let grid = Grid::new(cfg.n)?;
    let mut checks = Vec::with_capacity(cfg.trials);
    for t in 0..cfg.trials as u64 {
        let seed = cfg.seed.wrapping_add(t);
        let (omega, phi) = compatibility_trial(grid, cfg.band, seed)?;
        checks.push(
            compatibility_residual(&omega, &phi)?
                .with_tolerance(cfg.tolerance)
                .with("seed", seed),
        );
    }
    let (omega, phi) = compatibility_trial(grid, cfg.band, cfg.seed)?;
    let control =
        compatibility_residual_perturbed(&omega, &phi, CONTROL_DELTA)?.with("seed", cfg.seed);
    finish(
        cfg,
        "verify-compatibility.json",
        "compatibility",
        &checks,
        controls(&[control]),
    )
}

fn verify_zakharov(cfg: &RunConfig) -> Result<bool, CliError> {
    let grid = Grid::new(cfg.n)?;
    let params = ZakharovParams::new(
        cfg.alpha, cfg.beta, cfg.gamma, cfg.delta, cfg.lambda, cfg.policy,
    )?;
    let mut checks = Vec::with_capacity(cfg.trials);
    for t in 0..cfg.trials as u64 {
        let seed = cfg.seed.wrapping_add(t);
        let omega = initial_condition(&cfg.ic, &cfg.ic_params, grid, seed)?;
        let phi = random_complex(grid, cfg.band, &mut rng(seed))?;
        let report = zakharov_residual(&omega, &phi, &params)?;
        checks.push(
            report
                .with_tolerance(cfg.tolerance)
                .with("seed", seed)
                .with("ic", &cfg.ic),
        );
    }
    finish(cfg, "verify-zakharov.json", "zakharov", &checks, Map::new())
}

fn verify_conservation(cfg: &RunConfig) -> Result<bool, CliError> {
    let (_, omega, stepper) = setup(cfg)?;
    stepper.cfl_number(&omega)?;
    let tolerances = DriftTolerances {
        quadratic: cfg.drift_tolerance,
        casimir: cfg.casimir_tolerance,
    };
    let outcome = conservation_suite(&omega, &stepper, cfg.t_end, cfg.samples, tolerances)?;
    let mut checks = outcome.reports;
    let mut extra = Map::new();
    if is_stationary(cfg)? {
        checks.push(stationarity_check(
            &omega,
            &stepper,
            cfg.t_end,
            STATIONARY_TOLERANCE,
        )?);
    } else if cfg.order_study {
        let study = order_study(&omega, cfg.dt, cfg.t_end)?;
        extra.insert("order".into(), json!(study.order));
        checks.push(study.report);
    }
    write_atomic(
        &cfg.out.join("diagnostics.csv"),
        diagnostics_csv(&outcome.samples).as_bytes(),
    )?;
    finish(
        cfg,
        "verify-conservation.json",
        "conservation",
        &checks,
        extra,
    )
}

pub fn spectrum(cfg: &RunConfig) -> Result<bool, CliError> {
    let (_, omega, stepper) = setup(cfg)?;
    let times = cfg
        .sample_times
        .clone()
        .unwrap_or_else(|| vec![0.0, cfg.t_end]);
    let report = spectrum_along_flow(&omega, &stepper, cfg.k, &times)?;

    let mut checks = Vec::new();
    if is_stationary(cfg)? {
        checks.push(
            ResidualReport::new(
                "stationary-drift",
                report.max_drift(),
                report.max_norm(),
                STATIONARY_TOLERANCE,
            )
            .with("K", cfg.k),
        );
    }
    let spectra: Vec<Value> = report
        .times
        .iter()
        .enumerate()
        .map(|(i, t)| {
            json!({
                "time": t,
                "norm": report.norms[i],
                "drift": report.drift[i],
                "eigenvalues": report.spectra[i].iter().map(|v| [v.re, v.im]).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut extra = Map::new();
    extra.insert("K".into(), json!(cfg.k));
    extra.insert("spectra".into(), Value::Array(spectra));

    if !cfg.k_sweep.is_empty() {
        let points = drift_sweep(&omega, &stepper, &cfg.k_sweep, cfg.t_end)?;
        let decreasing = points.windows(2).all(|w| w[1].drift < w[0].drift);
        for p in &points {
            println!(
                "K = {:>3}: drift {:.6e}, |M|_2 {:.6e}, drift/|M|_2 {:.6e}",
                p.radius,
                p.drift,
                p.spectral_radius,
                p.relative_drift()
            );
        }
        println!("drift strictly decreasing across sweep: {decreasing}");
        let sweep: Vec<Value> = points
            .iter()
            .map(|p| {
                json!({
                    "K": p.radius,
                    "drift": p.drift,
                    "frobenius_norm": p.norm,
                    "spectral_radius": p.spectral_radius,
                    "relative_drift": p.relative_drift(),
                })
            })
            .collect();
        extra.insert("sweep_time".into(), json!(cfg.t_end));
        extra.insert("sweep".into(), Value::Array(sweep));
        extra.insert("sweep_strictly_decreasing".into(), json!(decreasing));
    }
    finish(cfg, "spectrum.json", "spectrum", &checks, extra)
}

pub fn transport(cfg: &RunConfig) -> Result<bool, CliError> {
    let (_, omega, stepper) = setup(cfg)?;
    // spectra are sorted by imaginary part, so the last pair has the
    // largest Im λ
    let index = cfg
        .mode_index
        .unwrap_or_else(|| ModeBox::new(cfg.k).dim().saturating_sub(1));
    let out = eigenfunction_transport_check(&omega, cfg.k, index, &stepper, cfg.t_end)?;
    let mut extra = Map::new();
    extra.insert("lambda".into(), json!([out.lambda.re, out.lambda.im]));
    extra.insert("mode_index".into(), json!(index));
    extra.insert("time".into(), json!(out.time));
    finish(cfg, "transport.json", "transport", &out.reports, extra)
}

/// Reads a report's embedded configuration back into a [`RunConfig`].
pub fn config_from_report(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let map = doc["config"]
        .as_object()
        .ok_or_else(|| CliError::Config(format!("{} has no config object", path.display())))?;
    let mut cfg = RunConfig::default();
    for (k, v) in map {
        let value = v
            .as_str()
            .ok_or_else(|| CliError::Config(format!("config value for `{k}` is not a string")))?;
        cfg.set(k, value)?;
    }
    Ok(cfg)
}
