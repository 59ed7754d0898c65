use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{SpectralField, Symmetry};
use crate::grid::{Grid, Mode};
use crate::random::{random_real, rng};

/// Named initial-condition parameters (`eps`, `mode`, `band`).
pub type IcParams = BTreeMap<String, f64>;

/// Library of zero-mean initial vorticities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialCondition {
    /// `Ω ≡ 0`
    Zero,
    /// `2 cos x cos y`
    TaylorGreen,
    /// `cos y`
    Shear,
    /// `cos y + ε cos(m x)`
    PerturbedShear { eps: f64, mode: usize },
    /// Gaussian coefficients on `max|k| ≤ band`, unit enstrophy.
    RandomBand { band: usize },
}

pub const DEFAULT_EPS: f64 = 0.1;
/// `m = 1` would put both modes on the `|k| = 1` shell, which is itself a
/// stationary solution; the perturbation must sit on a different shell.
/// Small `m` evolves so slowly that RK4 step-halving differences drop to
/// roundoff at `dt = 1e-3`; `m = 8` keeps them near `1e-11`.
pub const DEFAULT_PERTURBATION_MODE: usize = 8;
pub const DEFAULT_RANDOM_BAND: usize = 8;

fn take(params: &IcParams, allowed: &[&str], name: &str) -> Result<()> {
    if let Some(key) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::InvalidParameter {
            name: key.clone(),
            reason: format!("not a parameter of initial condition `{name}`"),
        });
    }
    Ok(())
}

fn positive_integer(params: &IcParams, key: &str, default: usize) -> Result<usize> {
    match params.get(key) {
        None => Ok(default),
        Some(&v) if v.is_finite() && v >= 1.0 && v.fract() == 0.0 => Ok(v as usize),
        Some(&v) => Err(Error::InvalidParameter {
            name: key.into(),
            reason: format!("expected a positive integer, got {v}"),
        }),
    }
}

impl InitialCondition {
    pub fn parse(name: &str, params: &IcParams) -> Result<Self> {
        match name {
            "zero" => take(params, &[], name).map(|_| InitialCondition::Zero),
            "taylor-green" => take(params, &[], name).map(|_| InitialCondition::TaylorGreen),
            "shear" => take(params, &[], name).map(|_| InitialCondition::Shear),
            "perturbed-shear" => {
                take(params, &["eps", "mode"], name)?;
                let eps = params.get("eps").copied().unwrap_or(DEFAULT_EPS);
                if !eps.is_finite() {
                    return Err(Error::InvalidParameter {
                        name: "eps".into(),
                        reason: "must be finite".into(),
                    });
                }
                let mode = positive_integer(params, "mode", DEFAULT_PERTURBATION_MODE)?;
                Ok(InitialCondition::PerturbedShear { eps, mode })
            }
            "random-band" => {
                take(params, &["band"], name)?;
                let band = positive_integer(params, "band", DEFAULT_RANDOM_BAND)?;
                Ok(InitialCondition::RandomBand { band })
            }
            other => Err(Error::UnknownInitialCondition(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            InitialCondition::Zero => "zero",
            InitialCondition::TaylorGreen => "taylor-green",
            InitialCondition::Shear => "shear",
            InitialCondition::PerturbedShear { .. } => "perturbed-shear",
            InitialCondition::RandomBand { .. } => "random-band",
        }
    }

    /// True for the closed-form Laplacian eigenfunctions, which are steady.
    pub fn is_stationary(&self) -> bool {
        matches!(
            self,
            InitialCondition::Zero | InitialCondition::TaylorGreen | InitialCondition::Shear
        )
    }

    pub fn build(&self, grid: Grid, seed: u64) -> Result<SpectralField> {
        let half = Complex64::new(0.5, 0.0);
        let modes: Vec<(Mode, Complex64)> = match *self {
            InitialCondition::Zero => Vec::new(),
            InitialCondition::Shear => vec![(Mode::new(0, 1), half)],
            InitialCondition::TaylorGreen => {
                vec![(Mode::new(1, 1), half), (Mode::new(1, -1), half)]
            }
            InitialCondition::PerturbedShear { eps, mode } => {
                if mode > grid.max_mode() {
                    return Err(Error::BandOverflow {
                        band: mode,
                        n: grid.n(),
                        required: 2 * mode + 2,
                    });
                }
                vec![
                    (Mode::new(0, 1), half),
                    (Mode::new(mode as i64, 0), half * eps),
                ]
            }
            InitialCondition::RandomBand { band } => {
                let f = random_real(grid, band, &mut rng(seed))?;
                let enstrophy = 0.5 * f.norm().powi(2);
                return Ok(f.scale(enstrophy.sqrt().recip()));
            }
        };
        SpectralField::from_modes(grid, Symmetry::Real, &modes)
    }
}

/// Looks up `name`, validates `params`, and builds the vorticity.
pub fn initial_condition(
    name: &str,
    params: &IcParams,
    grid: Grid,
    seed: u64,
) -> Result<SpectralField> {
    InitialCondition::parse(name, params)?.build(grid, seed)
}
