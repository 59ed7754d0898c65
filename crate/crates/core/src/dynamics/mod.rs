//! Time integration of the vorticity equation, Lax eigenfunction transport
//! and the Zakharov modified system.

mod diagnostics;
mod initial;
mod rhs;
mod stepper;
mod zakharov;

pub use diagnostics::{casimir, diagnostics, Diagnostics};
pub use initial::{initial_condition, IcParams, InitialCondition};
pub use rhs::{euler_rhs, phi_rhs, phi_rhs_projected};
pub use stepper::{FlowState, Phi, TimeStepper};
pub use zakharov::{
    zakharov_rhs, zakharov_solve_s, ResonancePolicy, ZakharovParams, ZakharovSolution,
};
