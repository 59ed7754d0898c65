//! Pseudo-spectral 2D Euler vorticity dynamics on the periodic torus and a
//! numerical harness for its Lax pair `Lφ = {Ω, φ}`, `Aφ = {Ψ, φ}`.
//!
//! The crate is organized bottom-up:
//!
//! * [`grid`], [`field`], [`transform`], [`spectral`]: representations,
//!   Fourier transforms, derivatives, Poisson brackets and the stream solve.
//! * [`dynamics`]: RK4 integration of the vorticity equation, eigenfunction
//!   co-transport, the Zakharov modified system and invariants.
//! * [`lax`]: truncated operator matrices, their spectra and spectrum
//!   tracking along trajectories.
//! * [`verify`]: residual reports for the compatibility condition, the
//!   Zakharov zero-curvature condition, bracket identities and conservation.
//!
//! No IO lives here; file formats and the command line are in the companion
//! CLI crate.

pub mod dynamics;
pub mod error;
pub mod field;
pub mod grid;
pub mod lax;
pub mod random;
pub mod spectral;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use field::{ComplexField, RealField, SpectralField, Symmetry};
pub use grid::{Axis, Grid, Mode};
