use num_complex::Complex64;

use crate::dynamics::{euler_rhs, FlowState, Phi, TimeStepper};
use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::spectral::dealias_cutoff;
use crate::verify::ResidualReport;

use super::eigen::eigendecompose_skew_hermitian;
use super::modebox::ModeBox;
use super::operator::{assemble_operator, OperatorKind};

/// Base states whose tendency exceeds this fraction of `‖Ω‖` are rejected.
pub const STATIONARITY_TOLERANCE: f64 = 1e-12;

pub const TRANSPORT_TOLERANCE: f64 = 1e-6;
pub const NORM_TOLERANCE: f64 = 1e-8;

/// Result of transporting one truncated eigenvector of `L` along a
/// stationary flow.
#[derive(Debug, Clone)]
pub struct TransportOutcome {
    pub lambda: Complex64,
    pub mode_index: usize,
    pub time: f64,
    pub phi0: SpectralField,
    pub phi: SpectralField,
    pub reports: Vec<ResidualReport>,
}

impl TransportOutcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }
}

fn bad(name: &str, reason: String) -> Error {
    Error::InvalidParameter {
        name: name.into(),
        reason,
    }
}

/// Takes eigenvector `mode_index` of the truncated `L` for a stationary
/// `ic`, transports it with `∂_t φ = −P{Ψ, Pφ}` and compares against
/// `e^{λt} φ(0)`.
///
/// The eigen residual tolerance is the transport tolerance times
/// `ρ(L) + |λ|`, the amplification `‖(L − λ)e‖ ≤ (ρ + |λ|)‖e‖` of a
/// transport error `e`.
pub fn eigenfunction_transport_check(
    ic: &SpectralField,
    radius: usize,
    mode_index: usize,
    stepper: &TimeStepper,
    duration: f64,
) -> Result<TransportOutcome> {
    let scale = ic.norm();
    let tendency = euler_rhs(ic)?.norm();
    if tendency > STATIONARITY_TOLERANCE * scale {
        return Err(Error::NonStationary {
            relative: tendency / scale,
        });
    }
    let grid = ic.grid();
    let modebox = ModeBox::new(radius);
    modebox.check_fits(grid)?;
    let band = ic.band().unwrap_or_else(|| ic.support_band());
    if radius + band > dealias_cutoff(grid) {
        return Err(bad(
            "K",
            format!(
                "box radius {radius} plus vorticity band {band} exceeds the dealiasing cutoff {}",
                dealias_cutoff(grid)
            ),
        ));
    }

    let l = assemble_operator(ic, OperatorKind::L, &modebox)?;
    let pairs = eigendecompose_skew_hermitian(&l)?;
    if mode_index >= pairs.values.len() {
        return Err(bad(
            "mode_index",
            format!(
                "{mode_index} is out of range for dimension {}",
                pairs.values.len()
            ),
        ));
    }
    let lambda = pairs.values[mode_index];
    let rho = pairs.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let phi0 = modebox.lift(grid, &pairs.vector(mode_index))?;

    let steps = stepper.steps_for(duration);
    let state = FlowState::new(ic.clone()).with_phi(Phi {
        field: phi0.clone(),
        lambda,
        projection: Some(radius),
    });
    let end = stepper.advance(&state, steps)?;
    let time = steps as f64 * stepper.dt();
    let phi = end.phis[0].field.clone();

    let expected = phi0.scale_complex((lambda * time).exp());
    let n0 = phi0.norm();
    let nt = phi.norm();
    let transport = ResidualReport::new(
        "transport",
        phi.sub(&expected)?.norm(),
        n0,
        TRANSPORT_TOLERANCE,
    );
    let norm = ResidualReport::new("norm-preservation", (nt - n0).abs(), n0, NORM_TOLERANCE);

    let projected = modebox.project(&phi);
    let lphi = l.apply(&projected);
    let eig_res = lphi
        .iter()
        .zip(&projected)
        .map(|(a, b)| (a - b * lambda).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let eigen = ResidualReport::new(
        "eigen-residual",
        eig_res,
        nt,
        TRANSPORT_TOLERANCE * (rho + lambda.norm()),
    );

    let reports = [transport, norm, eigen]
        .into_iter()
        .map(|r| {
            r.with("lambda", lambda)
                .with("K", radius)
                .with("mode_index", mode_index)
                .with("time", time)
                .with("dt", stepper.dt())
        })
        .collect();
    Ok(TransportOutcome {
        lambda,
        mode_index,
        time,
        phi0,
        phi,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{initial_condition, IcParams};
    use crate::grid::Grid;

    #[test]
    fn shear_eigenvector_is_transported_in_closed_form() {
        let g = Grid::new(32).unwrap();
        let omega = initial_condition("shear", &IcParams::new(), g, 0).unwrap();
        let stepper = TimeStepper::new(1e-2).unwrap();
        let dim = ModeBox::new(4).dim();
        for index in [0, dim / 3, dim - 1] {
            let out = eigenfunction_transport_check(&omega, 4, index, &stepper, 0.5).unwrap();
            assert!(out.passed(), "{:?}", out.reports);
        }
    }

    #[test]
    fn rejects_moving_flows_and_bad_indices() {
        let g = Grid::new(32).unwrap();
        let stepper = TimeStepper::new(1e-2).unwrap();
        let moving = initial_condition("perturbed-shear", &IcParams::new(), g, 0).unwrap();
        assert!(matches!(
            eigenfunction_transport_check(&moving, 3, 0, &stepper, 0.1),
            Err(Error::NonStationary { .. })
        ));
        let shear = initial_condition("shear", &IcParams::new(), g, 0).unwrap();
        assert!(eigenfunction_transport_check(&shear, 3, 10_000, &stepper, 0.1).is_err());
        assert!(eigenfunction_transport_check(&shear, 10, 0, &stepper, 0.1).is_err());
    }
}
