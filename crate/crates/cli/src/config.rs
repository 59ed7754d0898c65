//! Flat `key = value` run configuration.
//!
//! Keys are the fields of [`RunConfig`]; initial-condition parameters are
//! passed as `ic.<name>` (for example `ic.eps = 0.2`). `#` starts a comment.
//! Unknown keys are rejected so that typos cannot silently fall back to
//! defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use euler_lax::dynamics::{IcParams, ResonancePolicy};
use num_complex::Complex64;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub dt: f64,
    pub t_end: f64,
    pub ic: String,
    pub ic_params: IcParams,
    pub seed: u64,
    pub k: usize,
    pub out: PathBuf,
    pub suite: Option<String>,
    /// Time between snapshots; `None` writes only the first and last.
    pub snapshot_interval: Option<f64>,
    pub samples: usize,
    pub trials: usize,
    pub band: usize,
    /// Eigenpair for transport; `None` picks the largest `Im λ`.
    pub mode_index: Option<usize>,
    pub sample_times: Option<Vec<f64>>,
    pub k_sweep: Vec<usize>,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub lambda: Complex64,
    pub policy: ResonancePolicy,
    pub tolerance: f64,
    pub drift_tolerance: f64,
    pub casimir_tolerance: f64,
    pub order_study: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 64,
            dt: 1e-3,
            t_end: 1.0,
            ic: "perturbed-shear".into(),
            ic_params: IcParams::new(),
            seed: 0,
            k: 12,
            out: PathBuf::from("out"),
            suite: None,
            snapshot_interval: None,
            samples: 10,
            trials: 10,
            band: 8,
            mode_index: None,
            sample_times: None,
            k_sweep: Vec::new(),
            alpha: 1.0,
            beta: 2f64.sqrt(),
            gamma: 0.0,
            delta: 1.0,
            lambda: Complex64::new(1.0, 1.0),
            policy: ResonancePolicy::Error,
            tolerance: 1e-11,
            drift_tolerance: 1e-6,
            casimir_tolerance: 1e-2,
            order_study: true,
        }
    }
}

fn invalid(key: &str, value: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{key} = {value}: {why}"))
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| invalid(key, value, e))
}

fn positive(key: &str, value: &str) -> Result<f64, CliError> {
    let v: f64 = parse(key, value)?;
    if !(v.is_finite() && v > 0.0) {
        return Err(invalid(key, value, "must be positive and finite"));
    }
    Ok(v)
}

fn finite(key: &str, value: &str) -> Result<f64, CliError> {
    let v: f64 = parse(key, value)?;
    if !v.is_finite() {
        return Err(invalid(key, value, "must be finite"));
    }
    Ok(v)
}

fn list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse(key, s))
        .collect()
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl RunConfig {
    /// Applies one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let value = value.trim();
        if let Some(name) = key.strip_prefix("ic.") {
            self.ic_params.insert(name.to_string(), finite(key, value)?);
            return Ok(());
        }
        match key {
            "n" => self.n = parse(key, value)?,
            "dt" => self.dt = positive(key, value)?,
            "T" => self.t_end = positive(key, value)?,
            "ic" => self.ic = value.to_string(),
            "seed" => self.seed = parse(key, value)?,
            "K" => self.k = parse(key, value)?,
            "out" => self.out = PathBuf::from(value),
            "suite" => self.suite = Some(value.to_string()),
            "snapshot_interval" => self.snapshot_interval = Some(positive(key, value)?),
            "samples" => self.samples = parse(key, value)?,
            "trials" => self.trials = parse(key, value)?,
            "band" => self.band = parse(key, value)?,
            "mode_index" => self.mode_index = Some(parse(key, value)?),
            "sample_times" => self.sample_times = Some(list(key, value)?),
            "k_sweep" => self.k_sweep = list(key, value)?,
            "alpha" => self.alpha = finite(key, value)?,
            "beta" => self.beta = finite(key, value)?,
            "gamma" => self.gamma = finite(key, value)?,
            "delta" => self.delta = finite(key, value)?,
            "lambda_re" => self.lambda.re = finite(key, value)?,
            "lambda_im" => self.lambda.im = finite(key, value)?,
            "policy" => {
                self.policy = match value {
                    "error" => ResonancePolicy::Error,
                    "zero-gauge" => ResonancePolicy::ZeroGauge,
                    _ => return Err(invalid(key, value, "expected `error` or `zero-gauge`")),
                }
            }
            "tolerance" => self.tolerance = positive(key, value)?,
            "drift_tolerance" => self.drift_tolerance = positive(key, value)?,
            "casimir_tolerance" => self.casimir_tolerance = positive(key, value)?,
            "order_study" => self.order_study = parse(key, value)?,
            "dealias" => {
                if value != "2/3" {
                    return Err(invalid(key, value, "only the 2/3 rule is supported"));
                }
            }
            _ => return Err(CliError::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Parses `key = value` lines on top of the current values.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (number, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!(
                    "line {}: expected `key = value`, got `{raw}`",
                    number + 1
                ))
            })?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    /// Checks cross-field constraints that single assignments cannot.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.samples == 0 || self.trials == 0 {
            return Err(CliError::Config(
                "samples and trials must be positive".into(),
            ));
        }
        if let Some(times) = &self.sample_times {
            if times.first() != Some(&0.0) || times.windows(2).any(|w| w[1] <= w[0]) {
                return Err(CliError::Config(
                    "sample_times must start at 0 and increase strictly".into(),
                ));
            }
        }
        Ok(())
    }

    /// Every setting as canonical `key = value` pairs. Feeding them back
    /// through [`RunConfig::set`] reproduces this configuration exactly.
    pub fn resolved(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        put("n", self.n.to_string());
        put("dt", self.dt.to_string());
        put("T", self.t_end.to_string());
        put("ic", self.ic.clone());
        put("seed", self.seed.to_string());
        put("K", self.k.to_string());
        put("out", self.out.display().to_string());
        if let Some(s) = &self.suite {
            put("suite", s.clone());
        }
        if let Some(s) = self.snapshot_interval {
            put("snapshot_interval", s.to_string());
        }
        put("samples", self.samples.to_string());
        put("trials", self.trials.to_string());
        put("band", self.band.to_string());
        if let Some(i) = self.mode_index {
            put("mode_index", i.to_string());
        }
        if let Some(t) = &self.sample_times {
            put("sample_times", join(t));
        }
        if !self.k_sweep.is_empty() {
            put("k_sweep", join(&self.k_sweep));
        }
        put("alpha", self.alpha.to_string());
        put("beta", self.beta.to_string());
        put("gamma", self.gamma.to_string());
        put("delta", self.delta.to_string());
        put("lambda_re", self.lambda.re.to_string());
        put("lambda_im", self.lambda.im.to_string());
        put(
            "policy",
            match self.policy {
                ResonancePolicy::Error => "error",
                ResonancePolicy::ZeroGauge => "zero-gauge",
            }
            .to_string(),
        );
        put("tolerance", self.tolerance.to_string());
        put("drift_tolerance", self.drift_tolerance.to_string());
        put("casimir_tolerance", self.casimir_tolerance.to_string());
        put("order_study", self.order_study.to_string());
        put("dealias", "2/3".to_string());
        for (k, v) in &self.ic_params {
            put(&format!("ic.{k}"), v.to_string());
        }
        m
    }

    /// The resolved configuration as config-file text.
    pub fn to_text(&self) -> String {
        self.resolved()
            .iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}
