use crate::error::Result;
use crate::field::SpectralField;
use crate::grid::{Grid, Mode};
use crate::random::{random_complex, random_real, rng};
use crate::spectral::{bracket_exact, poisson_solve};
use num_complex::Complex64;

use super::report::ResidualReport;
use super::{gradient_norm, DEFAULT_TOLERANCE};

/// `{∂_tΩ, φ} − [L, A]φ` for a given `∂_tΩ`, with its operand-norm scale.
fn lax_defect(
    omega: &SpectralField,
    psi: &SpectralField,
    d_omega: &SpectralField,
    phi: &SpectralField,
) -> Result<(SpectralField, f64)> {
    let psi_phi = bracket_exact(psi, phi)?;
    let omega_phi = bracket_exact(omega, phi)?;
    let la = bracket_exact(omega, &psi_phi)?;
    let al = bracket_exact(psi, &omega_phi)?;
    let lhs = bracket_exact(d_omega, phi)?;
    let r = lhs.sub(&la.sub(&al)?)?;
    let scale = gradient_norm(d_omega) * gradient_norm(phi)
        + gradient_norm(omega) * gradient_norm(&psi_phi)
        + gradient_norm(psi) * gradient_norm(&omega_phi);
    Ok((r, scale))
}

fn context(report: ResidualReport, omega: &SpectralField, phi: &SpectralField) -> ResidualReport {
    report
        .with("n", omega.grid().n())
        .with(
            "band_omega",
            omega.band().map_or("none".into(), |b| b.to_string()),
        )
        .with(
            "band_phi",
            phi.band().map_or("none".into(), |b| b.to_string()),
        )
}

/// Checks `∂_t L = [L, A]` on a test function: with `∂_tΩ = −{Ψ, Ω}`,
/// `{∂_tΩ, φ} − ({Ω, {Ψ, φ}} − {Ψ, {Ω, φ}})` vanishes by the Jacobi
/// identity. Both inputs need declared bands.
pub fn compatibility_residual(
    omega: &SpectralField,
    phi: &SpectralField,
) -> Result<ResidualReport> {
    let psi = poisson_solve(omega)?;
    let d_omega = bracket_exact(&psi, omega)?.scale(-1.0);
    let (r, scale) = lax_defect(omega, &psi, &d_omega, phi)?;
    Ok(context(
        ResidualReport::new("compatibility", r.norm(), scale, DEFAULT_TOLERANCE),
        omega,
        phi,
    ))
}

/// Negative control: `∂_tΩ` is replaced by `−{Ψ, Ω} + a cos x` with `a`
/// chosen so the perturbation contributes `delta` times the unperturbed
/// reference scale, i.e. `a ‖∇cos x‖ ‖∇φ‖ = delta · scale`. The relative
/// residual then comes out at `O(delta)` whatever the field magnitudes.
pub fn compatibility_residual_perturbed(
    omega: &SpectralField,
    phi: &SpectralField,
    delta: f64,
) -> Result<ResidualReport> {
    let grid = omega.grid();
    let psi = poisson_solve(omega)?;
    let d_omega = bracket_exact(&psi, omega)?.scale(-1.0);
    let (_, scale) = lax_defect(omega, &psi, &d_omega, phi)?;
    let half = Complex64::new(0.5, 0.0);
    let cos_x = SpectralField::from_modes(
        grid,
        crate::field::Symmetry::Real,
        &[(Mode::new(1, 0), half)],
    )?
    .with_band(1)?;
    let amplitude =
        delta * scale / (gradient_norm(&cos_x) * gradient_norm(phi)).max(f64::MIN_POSITIVE);
    let perturbed = d_omega.add(&cos_x.scale(amplitude))?;
    let (r, _) = lax_defect(omega, &psi, &perturbed, phi)?;
    let report = ResidualReport::new(
        "compatibility-perturbed",
        r.norm(),
        scale,
        DEFAULT_TOLERANCE,
    )
    .with("delta", delta)
    .with("amplitude", amplitude);
    Ok(context(report, omega, phi))
}

/// One seeded trial: real `Ω` and complex `φ` drawn from one stream.
pub fn compatibility_trial(
    grid: Grid,
    band: usize,
    seed: u64,
) -> Result<(SpectralField, SpectralField)> {
    let mut r = rng(seed);
    let omega = random_real(grid, band, &mut r)?;
    let phi = random_complex(grid, band, &mut r)?;
    Ok((omega, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::field::Symmetry;

    #[test]
    fn random_trials_are_roundoff_only() {
        let g = Grid::new(64).unwrap();
        for seed in 0..3 {
            let (omega, phi) = compatibility_trial(g, 5, seed).unwrap();
            let r = compatibility_residual(&omega, &phi).unwrap();
            assert!(r.passed, "{r}");
            assert_eq!(r.context["n"], "64");
        }
    }

    #[test]
    fn zero_vorticity_gives_exact_zero() {
        let g = Grid::new(32).unwrap();
        let (_, phi) = compatibility_trial(g, 4, 1).unwrap();
        let r = compatibility_residual(&SpectralField::zeros(g, Symmetry::Real), &phi).unwrap();
        assert_eq!(r.residual_norm, 0.0);
        assert!(r.passed);
    }

    #[test]
    fn perturbation_is_detected_linearly() {
        let g = Grid::new(64).unwrap();
        let (omega, phi) = compatibility_trial(g, 5, 7).unwrap();
        let a = compatibility_residual_perturbed(&omega, &phi, 1e-3).unwrap();
        let b = compatibility_residual_perturbed(&omega, &phi, 2e-3).unwrap();
        assert!(!a.passed);
        assert!(a.relative > 1e-4 && a.relative < 1e-2, "{a}");
        assert!((b.relative / a.relative - 2.0).abs() < 1e-6);
    }

    #[test]
    fn padding_overflow_names_required_size() {
        let g = Grid::new(32).unwrap();
        let (omega, phi) = compatibility_trial(g, 8, 0).unwrap();
        match compatibility_residual(&omega, &phi) {
            Err(Error::BandOverflow { required, .. }) => assert!(required > 32),
            other => panic!("expected band overflow, got {other:?}"),
        }
    }
}
