//! Truncations of `L = {Ω, ·}` and `A = {Ψ, ·}` on Fourier mode boxes.
//!
//! Both operators are projected as `P O P` onto the same box, which keeps
//! the matrices skew-Hermitian for real generating fields.

mod eigen;
mod modebox;
mod operator;
mod spectrum;
mod transport;

pub use eigen::{
    eigen_residuals, eigendecompose, eigendecompose_skew_hermitian, eigenvalues,
    hausdorff_distance, sort_spectrum, spectral_order, Eigenpairs,
};
pub use modebox::ModeBox;
pub use operator::{assemble_operator, OperatorKind, OperatorMatrix};
pub use spectrum::{drift_sweep, spectrum_along_flow, SpectrumReport, SweepPoint};
pub use transport::{eigenfunction_transport_check, TransportOutcome};
