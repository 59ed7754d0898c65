use thiserror::Error;

use crate::grid::Mode;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid size {n} is invalid: must be even and at least 8")]
    InvalidGrid { n: usize },

    #[error("fields live on different grids ({left} vs {right})")]
    GridMismatch { left: usize, right: usize },

    #[error("non-finite value in {what}")]
    NonFinite { what: String },

    #[error(
        "field is flagged real-valued but conjugate symmetry is violated (defect {defect:.3e})"
    )]
    SymmetryViolated { defect: f64 },

    #[error("exact bracket requires declared bands on both operands")]
    MissingBand,

    #[error("field has nonzero coefficients outside declared band {band}")]
    OutOfBand { band: usize },

    #[error("band {band} is not representable on an n = {n} grid; need n >= {required}")]
    BandOverflow {
        band: usize,
        n: usize,
        required: usize,
    },

    #[error(
        "periodic Poisson problem is unsolvable: mean vorticity {mean:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NonZeroMean { mean: f64, tolerance: f64 },

    #[error("resonance: D1 S = D2 Omega has no solution on modes {}", list_modes(.modes))]
    Resonance { modes: Vec<Mode> },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("unknown initial condition `{0}`")]
    UnknownInitialCondition(String),

    #[error("initial condition is not stationary: |rhs| / |omega| = {relative:.3e}")]
    NonStationary { relative: f64 },

    #[error("mode box K = {k} exceeds grid support (n = {n} allows K <= {max})")]
    BoxTooLarge { k: usize, n: usize, max: usize },

    #[error("eigendecomposition failed for matrix with norm {norm:.3e}: {reason}")]
    Eigen { norm: f64, reason: String },

    #[error("state became non-finite in field `{field}` at t = {time}")]
    BlowUp { field: String, time: f64 },
}

fn list_modes(modes: &[Mode]) -> String {
    modes
        .iter()
        .map(Mode::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
