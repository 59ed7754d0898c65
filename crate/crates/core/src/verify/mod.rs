//! Residual checks with pass/fail reports.
//!
//! Every check evaluates brackets exactly on band-limited data, so identities
//! that hold in exact arithmetic leave only roundoff. Residuals are scaled by
//! sums of products of operand gradient norms, see [`gradient_norm`].

mod compatibility;
mod conservation;
mod identities;
mod operators;
mod report;
mod zakharov;

pub use compatibility::{
    compatibility_residual, compatibility_residual_perturbed, compatibility_trial,
};
pub use conservation::{
    conservation_suite, order_study, stationarity_check, ConservationOutcome, DriftTolerances,
    OrderStudy, ORDER_TARGET, ORDER_TOLERANCE,
};
pub use identities::{aliased_jacobi_control, bracket_identity_suite};
pub use operators::{
    operator_structure_check, CONSISTENCY_TOLERANCE, REAL_PART_TOLERANCE, SKEW_TOLERANCE,
};
pub use report::{all_passed, ResidualReport, SCALE_FLOOR};
pub use zakharov::{zakharov_residual, zakharov_trial};

use crate::field::SpectralField;

/// Default relative tolerance for roundoff-only identities.
pub const DEFAULT_TOLERANCE: f64 = 1e-11;

/// `sqrt(Σ |k|² |f̂_k|²)`, the coefficient norm of `∇f`.
pub fn gradient_norm(f: &SpectralField) -> f64 {
    f.grid()
        .modes()
        .map(|(i, m)| m.norm_sq() as f64 * f.coeffs()[i].norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Symmetry;
    use crate::grid::{Grid, Mode};
    use num_complex::Complex64;

    #[test]
    fn gradient_norm_of_plane_waves() {
        let g = Grid::new(16).unwrap();
        let f = SpectralField::from_modes(
            g,
            Symmetry::Complex,
            &[(Mode::new(3, 4), Complex64::new(0.0, 2.0))],
        )
        .unwrap();
        assert_eq!(gradient_norm(&f), 10.0);
        assert_eq!(gradient_norm(&SpectralField::zeros(g, Symmetry::Real)), 0.0);
    }
}
