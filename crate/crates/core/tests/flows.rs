use approx::assert_relative_eq;
use euler_lax::dynamics::{euler_rhs, initial_condition, FlowState, IcParams, TimeStepper};
use euler_lax::lax::{
    eigendecompose_skew_hermitian, eigenfunction_transport_check, spectrum_along_flow, ModeBox,
};
use euler_lax::verify::{conservation_suite, DriftTolerances};
use euler_lax::Grid;

fn ic(name: &str, n: usize) -> euler_lax::SpectralField {
    initial_condition(name, &IcParams::new(), Grid::new(n).unwrap(), 0).unwrap()
}

#[test]
fn perturbed_shear_is_not_stationary() {
    // cos y + ε cos mx: {Ψ, Ω} = ε(m − 1/m) sin y sin mx, whose four
    // coefficients have modulus 1/4
    let omega = ic("perturbed-shear", 32);
    let rhs = euler_rhs(&omega).unwrap();
    assert_relative_eq!(
        rhs.norm(),
        0.1 * (8.0 - 1.0 / 8.0) * 0.5,
        max_relative = 1e-12
    );
}

#[test]
fn trajectories_are_bit_reproducible() {
    let p = IcParams::from([("band".to_string(), 5.0)]);
    let g = Grid::new(32).unwrap();
    let stepper = TimeStepper::new(5e-3).unwrap();
    let run = || {
        let omega = initial_condition("random-band", &p, g, 17).unwrap();
        stepper.advance(&FlowState::new(omega), 40).unwrap().omega
    };
    assert_eq!(run().coeffs(), run().coeffs());
}

#[test]
fn random_flow_conserves_quadratic_invariants() {
    let p = IcParams::from([("band".to_string(), 4.0)]);
    let omega = initial_condition("random-band", &p, Grid::new(32).unwrap(), 2).unwrap();
    let stepper = TimeStepper::new(2e-3).unwrap();
    let out = conservation_suite(&omega, &stepper, 0.2, 4, DriftTolerances::default()).unwrap();
    assert!(
        out.reports[..2].iter().all(|r| r.passed),
        "{:?}",
        out.reports
    );
}

#[test]
fn zero_vorticity_has_zero_spectra() {
    let omega = ic("zero", 32);
    let r = spectrum_along_flow(&omega, &TimeStepper::new(0.1).unwrap(), 4, &[0.0, 0.2]).unwrap();
    assert!(r.spectra.iter().flatten().all(|v| v.norm() == 0.0));
}

#[test]
fn zero_eigenvalue_mode_stays_put() {
    let omega = ic("shear", 64);
    let modebox = ModeBox::new(6);
    let l = euler_lax::lax::assemble_operator(&omega, euler_lax::lax::OperatorKind::L, &modebox)
        .unwrap();
    let pairs = eigendecompose_skew_hermitian(&l).unwrap();
    let index = pairs.values.iter().position(|v| v.norm() < 1e-14).unwrap();
    let out =
        eigenfunction_transport_check(&omega, 6, index, &TimeStepper::new(1e-2).unwrap(), 1.0)
            .unwrap();
    let moved = out.phi.sub(&out.phi0).unwrap().norm() / out.phi0.norm();
    assert!(moved <= 1e-10, "{moved}");
}
