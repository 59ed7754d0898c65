use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::field::SpectralField;
use crate::grid::Grid;
use crate::random::{random_real, rng};
use crate::spectral::{bracket_aliased, bracket_exact, product_exact};

use super::report::ResidualReport;
use super::{gradient_norm, DEFAULT_TOLERANCE};

fn norms(terms: &[&SpectralField]) -> f64 {
    terms.iter().map(|t| t.norm()).sum()
}

fn jacobi(
    f: &SpectralField,
    g: &SpectralField,
    h: &SpectralField,
    bracket: impl Fn(&SpectralField, &SpectralField) -> Result<SpectralField>,
) -> Result<(f64, f64)> {
    let a = bracket(f, &bracket(g, h)?)?;
    let b = bracket(g, &bracket(h, f)?)?;
    let c = bracket(h, &bracket(f, g)?)?;
    Ok((a.add(&b)?.add(&c)?.norm(), norms(&[&a, &b, &c])))
}

/// Antisymmetry, bilinearity, Leibniz, Jacobi and zero-mean output of the
/// exact bracket on seeded random real fields. Trial `t` uses seed
/// `seed + t`, recorded in each report.
pub fn bracket_identity_suite(
    grid: Grid,
    band: usize,
    seed: u64,
    trials: usize,
) -> Result<Vec<ResidualReport>> {
    let mut reports = Vec::with_capacity(5 * trials);
    for t in 0..trials as u64 {
        let trial_seed = seed.wrapping_add(t);
        let mut r = rng(trial_seed);
        let f = random_real(grid, band, &mut r)?;
        let g = random_real(grid, band, &mut r)?;
        let h = random_real(grid, band, &mut r)?;
        let a: f64 = r.sample(StandardNormal);
        let b: f64 = r.sample(StandardNormal);

        let fg = bracket_exact(&f, &g)?;
        let gf = bracket_exact(&g, &f)?;
        let anti = ResidualReport::new(
            "antisymmetry",
            fg.add(&gf)?.norm(),
            norms(&[&fg, &gf]),
            DEFAULT_TOLERANCE,
        );

        let combo = f.scale(a).add(&h.scale(b))?;
        let lhs = bracket_exact(&combo, &g)?;
        let hg = bracket_exact(&h, &g)?;
        let rhs = fg.scale(a).add(&hg.scale(b))?;
        let bilinear = ResidualReport::new(
            "bilinearity",
            lhs.sub(&rhs)?.norm(),
            lhs.norm() + a.abs() * fg.norm() + b.abs() * hg.norm(),
            DEFAULT_TOLERANCE,
        );

        // {fh, g} = f{h, g} + h{f, g}
        let fh = product_exact(&f, &h)?;
        let lhs = bracket_exact(&fh, &g)?;
        let t1 = product_exact(&f, &hg)?;
        let t2 = product_exact(&h, &fg)?;
        let leibniz = ResidualReport::new(
            "leibniz",
            lhs.sub(&t1)?.sub(&t2)?.norm(),
            norms(&[&lhs, &t1, &t2]),
            DEFAULT_TOLERANCE,
        );

        let (jr, js) = jacobi(&f, &g, &h, bracket_exact)?;
        let jac = ResidualReport::new("jacobi", jr, js, DEFAULT_TOLERANCE);

        let mean = ResidualReport::new(
            "zero-mean",
            fg.mean().norm(),
            gradient_norm(&f) * gradient_norm(&g),
            DEFAULT_TOLERANCE,
        );

        for report in [anti, bilinear, leibniz, jac, mean] {
            reports.push(
                report
                    .with("seed", trial_seed)
                    .with("band", band)
                    .with("n", grid.n()),
            );
        }
    }
    Ok(reports)
}

/// The Jacobi check with exactness disabled: fields at band `n/2 − 1`
/// bracketed on the native grid without truncation. Aliasing breaks the
/// identity, so this report is expected to fail.
pub fn aliased_jacobi_control(grid: Grid, seed: u64) -> Result<ResidualReport> {
    let band = grid.max_mode();
    let mut r = rng(seed);
    let f = random_real(grid, band, &mut r)?;
    let g = random_real(grid, band, &mut r)?;
    let h = random_real(grid, band, &mut r)?;
    let (jr, js) = jacobi(&f, &g, &h, bracket_aliased)?;
    Ok(
        ResidualReport::new("jacobi-aliased", jr, js, DEFAULT_TOLERANCE)
            .with("seed", seed)
            .with("band", band)
            .with("n", grid.n()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_on_small_grid() {
        let g = Grid::new(64).unwrap();
        let reports = bracket_identity_suite(g, 5, 11, 2).unwrap();
        assert_eq!(reports.len(), 10);
        for r in &reports {
            assert!(r.passed, "{r}");
        }
        assert_eq!(reports[5].context["seed"], "12");
    }

    #[test]
    fn constants_give_exact_zeros() {
        let g = Grid::new(16).unwrap();
        for r in bracket_identity_suite(g, 0, 0, 2).unwrap() {
            assert_eq!(r.residual_norm, 0.0, "{r}");
            assert!(r.passed);
        }
    }

    #[test]
    fn aliasing_breaks_jacobi() {
        let r = aliased_jacobi_control(Grid::new(32).unwrap(), 0).unwrap();
        assert!(!r.passed, "{r}");
        assert!(r.relative > 1e-3);
    }
}
