use num_complex::Complex64;

use crate::dynamics::{FlowState, TimeStepper};
use crate::error::{Error, Result};
use crate::field::SpectralField;

use super::eigen::{eigenvalues, hausdorff_distance};
use super::modebox::ModeBox;
use super::operator::{assemble_operator, OperatorKind};

/// Sorted spectra of the truncated `L` sampled along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub radius: usize,
    pub times: Vec<f64>,
    pub spectra: Vec<Vec<Complex64>>,
    /// Frobenius norm of the truncated `L` at each sample.
    pub norms: Vec<f64>,
    /// Hausdorff distance to the previous sample's spectrum; 0 at the first.
    pub drift: Vec<f64>,
}

impl SpectrumReport {
    pub fn max_drift(&self) -> f64 {
        self.drift.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_norm(&self) -> f64 {
        self.norms.iter().copied().fold(0.0, f64::max)
    }
}

fn validate_times(times: &[f64]) -> Result<()> {
    let bad = |reason: &str| Error::InvalidParameter {
        name: "sample_times".into(),
        reason: reason.into(),
    };
    match times.first() {
        None => return Err(bad("at least one sample time is required")),
        Some(&t) if t != 0.0 => return Err(bad("sample times must start at 0")),
        _ => {}
    }
    if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(bad("sample times must be finite and strictly increasing"));
    }
    Ok(())
}

/// Evolves `ic` and returns the vorticity at each sample time.
fn snapshots(
    ic: &SpectralField,
    stepper: &TimeStepper,
    times: &[f64],
) -> Result<Vec<SpectralField>> {
    validate_times(times)?;
    let mut state = FlowState::new(ic.clone());
    let mut taken = 0;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let target = stepper.steps_for(t);
        state = stepper.advance(&state, target - taken)?;
        taken = target;
        out.push(state.omega.clone());
    }
    Ok(out)
}

fn spectrum_of(omega: &SpectralField, modebox: &ModeBox) -> Result<(Vec<Complex64>, f64)> {
    let m = assemble_operator(omega, OperatorKind::L, modebox)?;
    Ok((eigenvalues(&m)?, m.frobenius_norm()))
}

pub fn spectrum_along_flow(
    ic: &SpectralField,
    stepper: &TimeStepper,
    radius: usize,
    sample_times: &[f64],
) -> Result<SpectrumReport> {
    let modebox = ModeBox::new(radius);
    modebox.check_fits(ic.grid())?;
    let omegas = snapshots(ic, stepper, sample_times)?;
    let mut spectra = Vec::with_capacity(omegas.len());
    let mut norms = Vec::with_capacity(omegas.len());
    for omega in &omegas {
        let (values, norm) = spectrum_of(omega, &modebox)?;
        spectra.push(values);
        norms.push(norm);
    }
    let drift = std::iter::once(0.0)
        .chain(spectra.windows(2).map(|w| hausdorff_distance(&w[0], &w[1])))
        .collect();
    Ok(SpectrumReport {
        radius,
        times: sample_times.to_vec(),
        spectra,
        norms,
        drift,
    })
}

/// Drift between `t = 0` and `time` for one truncation radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub radius: usize,
    pub drift: f64,
    /// Larger Frobenius norm of the two truncated operators.
    pub norm: f64,
    /// Larger spectral radius of the two, i.e. their 2-norm since both are
    /// normal.
    pub spectral_radius: f64,
}

impl SweepPoint {
    /// Drift in units of the operator 2-norm.
    pub fn relative_drift(&self) -> f64 {
        self.drift / self.spectral_radius.max(f64::MIN_POSITIVE)
    }
}

fn spectral_radius(values: &[Complex64]) -> f64 {
    values.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Spectrum drift over `[0, time]` for several radii, sharing one trajectory.
pub fn drift_sweep(
    ic: &SpectralField,
    stepper: &TimeStepper,
    radii: &[usize],
    time: f64,
) -> Result<Vec<SweepPoint>> {
    for &r in radii {
        ModeBox::new(r).check_fits(ic.grid())?;
    }
    let omegas = snapshots(ic, stepper, &[0.0, time])?;
    radii
        .iter()
        .map(|&radius| {
            let modebox = ModeBox::new(radius);
            let (a, na) = spectrum_of(&omegas[0], &modebox)?;
            let (b, nb) = spectrum_of(&omegas[1], &modebox)?;
            Ok(SweepPoint {
                radius,
                drift: hausdorff_distance(&a, &b),
                norm: na.max(nb),
                spectral_radius: spectral_radius(&a).max(spectral_radius(&b)),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{initial_condition, IcParams};
    use crate::grid::Grid;

    #[test]
    fn stationary_shear_has_no_drift() {
        let g = Grid::new(32).unwrap();
        let omega = initial_condition("shear", &IcParams::new(), g, 0).unwrap();
        let stepper = TimeStepper::new(1e-2).unwrap();
        let r = spectrum_along_flow(&omega, &stepper, 4, &[0.0, 0.1, 0.2]).unwrap();
        assert_eq!(r.spectra.len(), 3);
        assert!(r.spectra.iter().all(|s| s.len() == ModeBox::new(4).dim()));
        assert!(r.max_drift() <= 1e-10 * r.max_norm());
    }

    #[test]
    fn sample_times_validated() {
        let g = Grid::new(16).unwrap();
        let omega = initial_condition("shear", &IcParams::new(), g, 0).unwrap();
        let stepper = TimeStepper::new(1e-2).unwrap();
        for times in [&[][..], &[0.1][..], &[0.0, 0.2, 0.1][..]] {
            assert!(spectrum_along_flow(&omega, &stepper, 2, times).is_err());
        }
    }
}
