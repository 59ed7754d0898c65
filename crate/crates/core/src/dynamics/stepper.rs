use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::spectral::{bracket_dealiased, poisson_solve, velocity_from_stream};

use super::rhs::phi_rhs_with_psi;

/// A co-evolved eigenfunction candidate of `L = {Ω, ·}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Phi {
    pub field: SpectralField,
    pub lambda: Complex64,
    /// Galerkin box radius for projected transport; `None` transports with
    /// the full dealiased bracket.
    pub projection: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub time: f64,
    pub omega: SpectralField,
    pub phis: Vec<Phi>,
}

impl FlowState {
    pub fn new(omega: SpectralField) -> Self {
        FlowState {
            time: 0.0,
            omega,
            phis: Vec::new(),
        }
    }

    pub fn with_phi(mut self, phi: Phi) -> Self {
        self.phis.push(phi);
        self
    }
}

/// Fixed-step classical RK4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeStepper {
    dt: f64,
}

struct Tendency {
    omega: SpectralField,
    phis: Vec<SpectralField>,
}

impl TimeStepper {
    pub fn new(dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameter {
                name: "dt".into(),
                reason: format!("must be positive and finite, got {dt}"),
            });
        }
        Ok(TimeStepper { dt })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// `dt · max|u| · n / 2π`; values above 0.5 are logged as warnings.
    pub fn cfl_number(&self, omega: &SpectralField) -> Result<f64> {
        let (u, v) = velocity_from_stream(&poisson_solve(omega)?)?;
        let speed = u
            .values()
            .iter()
            .zip(v.values())
            .fold(0.0f64, |m, (a, b)| m.max(a.hypot(*b)));
        let cfl = self.dt * speed * omega.grid().n() as f64 / (2.0 * PI);
        if cfl > 0.5 {
            log::warn!("CFL number {cfl:.3} exceeds 0.5 (dt = {})", self.dt);
        }
        Ok(cfl)
    }

    fn tendency(
        omega: &SpectralField,
        phis: &[SpectralField],
        proj: &[Option<usize>],
    ) -> Result<Tendency> {
        let psi = poisson_solve(omega)?;
        let d_omega = bracket_dealiased(&psi, omega)?.scale(-1.0);
        let d_phis = phis
            .iter()
            .zip(proj)
            .map(|(phi, &p)| phi_rhs_with_psi(&psi, phi, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Tendency {
            omega: d_omega,
            phis: d_phis,
        })
    }

    fn offset(
        state: &FlowState,
        k: &Tendency,
        h: f64,
    ) -> Result<(SpectralField, Vec<SpectralField>)> {
        let omega = state.omega.axpy(h, &k.omega)?;
        let phis = state
            .phis
            .iter()
            .zip(&k.phis)
            .map(|(p, d)| p.field.axpy(h, d))
            .collect::<Result<Vec<_>>>()?;
        Ok((omega, phis))
    }

    /// One RK4 step of `Ω` and every `φ`; each stage recomputes `Ψ` from the
    /// stage vorticity.
    pub fn step(&self, state: &FlowState) -> Result<FlowState> {
        let dt = self.dt;
        let proj: Vec<_> = state.phis.iter().map(|p| p.projection).collect();
        let phis0: Vec<_> = state.phis.iter().map(|p| p.field.clone()).collect();

        let k1 = Self::tendency(&state.omega, &phis0, &proj)?;
        let (o, p) = Self::offset(state, &k1, 0.5 * dt)?;
        let k2 = Self::tendency(&o, &p, &proj)?;
        let (o, p) = Self::offset(state, &k2, 0.5 * dt)?;
        let k3 = Self::tendency(&o, &p, &proj)?;
        let (o, p) = Self::offset(state, &k3, dt)?;
        let k4 = Self::tendency(&o, &p, &proj)?;

        let combine = |y: &SpectralField,
                       a: &SpectralField,
                       b: &SpectralField,
                       c: &SpectralField,
                       d: &SpectralField| {
            let incr = a.axpy(2.0, b)?.axpy(2.0, c)?.add(d)?;
            y.axpy(dt / 6.0, &incr)
        };

        let time = state.time + dt;
        let omega = combine(&state.omega, &k1.omega, &k2.omega, &k3.omega, &k4.omega)?;
        if !omega.is_finite() {
            return Err(Error::BlowUp {
                field: "omega".into(),
                time,
            });
        }
        let mut phis = Vec::with_capacity(state.phis.len());
        for (i, phi) in state.phis.iter().enumerate() {
            let field = combine(
                &phi.field,
                &k1.phis[i],
                &k2.phis[i],
                &k3.phis[i],
                &k4.phis[i],
            )?;
            if !field.is_finite() {
                return Err(Error::BlowUp {
                    field: format!("phi[{i}]"),
                    time,
                });
            }
            phis.push(Phi {
                field,
                ..phi.clone()
            });
        }
        Ok(FlowState { time, omega, phis })
    }

    /// Takes `steps` steps.
    pub fn advance(&self, state: &FlowState, steps: usize) -> Result<FlowState> {
        let mut s = state.clone();
        for _ in 0..steps {
            s = self.step(&s)?;
        }
        Ok(s)
    }

    /// Number of steps that covers `duration`, rounded to the nearest integer.
    pub fn steps_for(&self, duration: f64) -> usize {
        (duration / self.dt).round().max(0.0) as usize
    }
}
