use crate::error::Result;
use crate::field::SpectralField;
use crate::lax::{assemble_operator, eigendecompose, ModeBox, OperatorKind};
use crate::random::{random_complex, rng};
use crate::spectral::bracket_exact;

use super::report::ResidualReport;

pub const SKEW_TOLERANCE: f64 = 1e-13;
pub const REAL_PART_TOLERANCE: f64 = 1e-11;
pub const CONSISTENCY_TOLERANCE: f64 = 1e-12;

/// Structure of the truncated `L` for a real `omega` on a box of radius `K`:
/// skew-Hermiticity, conjugation symmetry, a purely imaginary spectrum from
/// the general (structure-blind) solver, and agreement of the matrix action
/// with the exact bracket followed by box projection for a seeded test
/// function.
pub fn operator_structure_check(
    omega: &SpectralField,
    radius: usize,
    seed: u64,
) -> Result<Vec<ResidualReport>> {
    let modebox = ModeBox::new(radius);
    let m = assemble_operator(omega, OperatorKind::L, &modebox)?;
    let norm = m.frobenius_norm();

    let skew = ResidualReport::new(
        "skew-hermitian",
        m.skew_hermitian_defect(),
        norm,
        SKEW_TOLERANCE,
    );
    let conj = ResidualReport::new(
        "conjugation-symmetry",
        m.conjugation_defect(),
        norm,
        SKEW_TOLERANCE,
    );

    let pairs = eigendecompose(&m)?;
    let re = pairs.values.iter().map(|v| v.re.abs()).fold(0.0, f64::max);
    let real_part = ResidualReport::new("spectrum-imaginary", re, norm, REAL_PART_TOLERANCE);

    let phi = random_complex(omega.grid(), radius, &mut rng(seed))?;
    let v = modebox.project(&phi);
    let lifted = modebox.lift(omega.grid(), &v)?;
    let expected = modebox.project(&bracket_exact(omega, &lifted)?);
    let got = m.apply(&v);
    let diff = got
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let scale = expected.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let consistency = ResidualReport::new("matrix-action", diff, scale, CONSISTENCY_TOLERANCE);

    Ok([skew, conj, real_part, consistency]
        .into_iter()
        .map(|r| {
            r.with("K", radius)
                .with("dim", modebox.dim())
                .with("seed", seed)
                .with("n", omega.grid().n())
        })
        .collect())
}
