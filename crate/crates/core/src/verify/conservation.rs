use crate::dynamics::{diagnostics, Diagnostics, FlowState, TimeStepper};
use crate::error::Result;
use crate::field::SpectralField;
use crate::transform::transform_inverse_real;

use super::report::ResidualReport;

/// Expected RK4 self-convergence order and the accepted deviation from it.
pub const ORDER_TARGET: f64 = 4.0;
pub const ORDER_TOLERANCE: f64 = 0.5;

/// Drift tolerances. The dealiased (Galerkin-truncated) dynamics conserve
/// energy and enstrophy up to time-stepping error, but not higher Casimirs,
/// which leak through the truncation; those get a separate, loose monitor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftTolerances {
    pub quadratic: f64,
    pub casimir: f64,
}

impl DriftTolerances {
    pub fn uniform(tolerance: f64) -> Self {
        DriftTolerances {
            quadratic: tolerance,
            casimir: tolerance,
        }
    }
}

impl Default for DriftTolerances {
    fn default() -> Self {
        DriftTolerances {
            quadratic: 1e-6,
            casimir: 1e-2,
        }
    }
}

/// Diagnostics sampled along a run plus one drift report per invariant.
#[derive(Debug, Clone)]
pub struct ConservationOutcome {
    pub samples: Vec<(f64, Diagnostics)>,
    pub reports: Vec<ResidualReport>,
}

/// Runs `omega` for `duration` and records `samples + 1` evenly spaced
/// diagnostics. Drifts are `max_t |C(t) − C(0)|` relative to `|C(0)|` for
/// energy and enstrophy and to `max(|C(0)|, ‖Ω‖^p)` for the Casimirs
/// `∫Ω^p`, which may start at zero.
pub fn conservation_suite(
    omega: &SpectralField,
    stepper: &TimeStepper,
    duration: f64,
    samples: usize,
    tolerances: DriftTolerances,
) -> Result<ConservationOutcome> {
    let samples = samples.max(1);
    let total = stepper.steps_for(duration);
    let mut state = FlowState::new(omega.clone());
    let mut out = vec![(0.0, diagnostics(omega))];
    let mut taken = 0;
    for s in 1..=samples {
        let target = total * s / samples;
        state = stepper.advance(&state, target - taken)?;
        taken = target;
        out.push((taken as f64 * stepper.dt(), diagnostics(&state.omega)));
    }

    let first = out[0].1;
    let norm = omega.norm();
    let drift = |get: fn(&Diagnostics) -> f64| {
        out.iter()
            .map(|(_, d)| (get(d) - get(&first)).abs())
            .fold(0.0, f64::max)
    };
    let reports = [
        (
            "energy-drift",
            drift(|d| d.energy),
            first.energy.abs(),
            tolerances.quadratic,
        ),
        (
            "enstrophy-drift",
            drift(|d| d.enstrophy),
            first.enstrophy.abs(),
            tolerances.quadratic,
        ),
        (
            "casimir3-drift",
            drift(|d| d.casimir3),
            first.casimir3.abs().max(norm.powi(3)),
            tolerances.casimir,
        ),
        (
            "casimir4-drift",
            drift(|d| d.casimir4),
            first.casimir4.abs().max(norm.powi(4)),
            tolerances.casimir,
        ),
    ]
    .into_iter()
    .map(|(name, residual, scale, tolerance)| {
        ResidualReport::new(name, residual, scale, tolerance)
            .with("n", omega.grid().n())
            .with("dt", stepper.dt())
            .with("T", taken as f64 * stepper.dt())
            .with("samples", samples)
    })
    .collect();
    Ok(ConservationOutcome {
        samples: out,
        reports,
    })
}

/// `‖Ω(T) − Ω(0)‖_∞` in physical space, compared absolutely.
pub fn stationarity_check(
    omega: &SpectralField,
    stepper: &TimeStepper,
    duration: f64,
    tolerance: f64,
) -> Result<ResidualReport> {
    let steps = stepper.steps_for(duration);
    let end = stepper.advance(&FlowState::new(omega.clone()), steps)?;
    let diff = transform_inverse_real(&end.omega.sub(omega)?)?.max_abs();
    Ok(ResidualReport::new("stationarity", diff, 1.0, tolerance)
        .with("n", omega.grid().n())
        .with("dt", stepper.dt())
        .with("T", steps as f64 * stepper.dt()))
}

/// Self-convergence of the integrator from runs at `dt`, `dt/2`, `dt/4`.
#[derive(Debug, Clone)]
pub struct OrderStudy {
    pub dts: [f64; 3],
    /// `‖Ω_dt − Ω_{dt/2}‖` and `‖Ω_{dt/2} − Ω_{dt/4}‖`.
    pub differences: [f64; 2],
    pub order: f64,
    /// Passes when `|order − 4| ≤ 0.5`.
    pub report: ResidualReport,
}

pub fn order_study(omega: &SpectralField, dt: f64, duration: f64) -> Result<OrderStudy> {
    let dts = [dt, dt / 2.0, dt / 4.0];
    let mut finals = Vec::with_capacity(3);
    for &h in &dts {
        let stepper = TimeStepper::new(h)?;
        finals.push(
            stepper
                .advance(&FlowState::new(omega.clone()), stepper.steps_for(duration))?
                .omega,
        );
    }
    let differences = [
        finals[0].sub(&finals[1])?.norm(),
        finals[1].sub(&finals[2])?.norm(),
    ];
    let order = (differences[0] / differences[1]).log2();
    let report = ResidualReport::new("order", (order - ORDER_TARGET).abs(), 1.0, ORDER_TOLERANCE)
        .with("order", format!("{order:.4}"))
        .with("dt", dt)
        .with("T", duration)
        .with("n", omega.grid().n())
        .with("difference_coarse", format!("{:.6e}", differences[0]))
        .with("difference_fine", format!("{:.6e}", differences[1]));
    Ok(OrderStudy {
        dts,
        differences,
        order,
        report,
    })
}
