use crate::error::Result;
use crate::field::SpectralField;
use crate::spectral::{bracket_dealiased, poisson_solve};

/// `∂_t Ω = −{Ψ, Ω}` with `ΔΨ = Ω`, dealiased.
pub fn euler_rhs(omega: &SpectralField) -> Result<SpectralField> {
    let psi = poisson_solve(omega)?;
    Ok(bracket_dealiased(&psi, omega)?.scale(-1.0))
}

/// `∂_t φ = −{Ψ, φ}` for the stream function of `omega`.
pub fn phi_rhs(omega: &SpectralField, phi: &SpectralField) -> Result<SpectralField> {
    let psi = poisson_solve(omega)?;
    Ok(bracket_dealiased(&psi, phi)?.scale(-1.0))
}

/// Galerkin transport `∂_t φ = −P{Ψ, Pφ}` with `P` the projection onto
/// `max(|k_x|,|k_y|) ≤ radius`. This is the flow generated by the truncated
/// operator `P A P`, so truncated eigenvectors evolve in closed form on
/// stationary base states.
pub fn phi_rhs_projected(
    psi: &SpectralField,
    phi: &SpectralField,
    radius: usize,
) -> Result<SpectralField> {
    Ok(bracket_dealiased(psi, &phi.truncated(radius))?
        .truncated(radius)
        .scale(-1.0))
}

pub(crate) fn phi_rhs_with_psi(
    psi: &SpectralField,
    phi: &SpectralField,
    projection: Option<usize>,
) -> Result<SpectralField> {
    match projection {
        Some(radius) => phi_rhs_projected(psi, phi, radius),
        None => Ok(bracket_dealiased(psi, phi)?.scale(-1.0)),
    }
}
