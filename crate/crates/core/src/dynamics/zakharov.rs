//! Zakharov's modified system `∂_t Ω + {S, Ω} = 0`, `D₁S = D₂Ω` with
//! `D₁ = α∂_x + β∂_y`, `D₂ = γ∂_x + δ∂_y`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::Mode;
use crate::spectral::bracket_dealiased;

/// What to do with modes on the resonant line `α k_x + β k_y = 0` where
/// `D₂Ω` does not vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResonancePolicy {
    #[default]
    Error,
    /// Set `Ŝ_k = 0` there and report the violated modes.
    ZeroGauge,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZakharovParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub lambda: Complex64,
    pub policy: ResonancePolicy,
}

impl ZakharovParams {
    pub fn new(
        alpha: f64,
        beta: f64,
        gamma: f64,
        delta: f64,
        lambda: Complex64,
        policy: ResonancePolicy,
    ) -> Result<Self> {
        let all = [alpha, beta, gamma, delta, lambda.re, lambda.im];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "zakharov".into(),
                reason: "non-finite coefficient".into(),
            });
        }
        if alpha == 0.0 && beta == 0.0 {
            return Err(Error::InvalidParameter {
                name: "alpha, beta".into(),
                reason: "D1 must not vanish".into(),
            });
        }
        Ok(ZakharovParams {
            alpha,
            beta,
            gamma,
            delta,
            lambda,
            policy,
        })
    }

    pub fn with_lambda(self, lambda: Complex64) -> Self {
        ZakharovParams { lambda, ..self }
    }

    /// `α k_x + β k_y`, the symbol of `D₁` divided by `i`.
    pub fn d1(&self, k: Mode) -> f64 {
        self.alpha * k.kx as f64 + self.beta * k.ky as f64
    }

    pub fn d2(&self, k: Mode) -> f64 {
        self.gamma * k.kx as f64 + self.delta * k.ky as f64
    }

    fn is_resonant(&self, k: Mode) -> bool {
        let scale = self.alpha.abs() * k.kx.abs() as f64 + self.beta.abs() * k.ky.abs() as f64;
        self.d1(k).abs() <= 1e-12 * scale
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZakharovSolution {
    pub s: SpectralField,
    /// Resonant modes where `D₂Ω ≠ 0` was gauged away (zero-gauge policy).
    pub violated: Vec<Mode>,
}

pub fn zakharov_solve_s(
    omega: &SpectralField,
    params: &ZakharovParams,
) -> Result<ZakharovSolution> {
    let norm = omega.norm();
    let mean_tol = 1e-12 * norm;
    if omega.mean().norm() > mean_tol {
        return Err(Error::NonZeroMean {
            mean: omega.mean().norm(),
            tolerance: mean_tol,
        });
    }
    let grid = omega.grid();
    let mut s = omega.clone();
    let mut violated = Vec::new();
    for (c, (_, k)) in s.coeffs_mut().iter_mut().zip(grid.modes()) {
        if k.is_zero() {
            *c = Complex64::new(0.0, 0.0);
        } else if params.is_resonant(k) {
            if (*c * params.d2(k)).norm() > 1e-13 * norm {
                violated.push(k);
            }
            *c = Complex64::new(0.0, 0.0);
        } else {
            *c *= params.d2(k) / params.d1(k);
        }
    }
    if !violated.is_empty() && params.policy == ResonancePolicy::Error {
        return Err(Error::Resonance { modes: violated });
    }
    Ok(ZakharovSolution { s, violated })
}

/// `∂_t Ω = −{S, Ω}`, dealiased.
pub fn zakharov_rhs(omega: &SpectralField, params: &ZakharovParams) -> Result<SpectralField> {
    let sol = zakharov_solve_s(omega, params)?;
    Ok(bracket_dealiased(&sol.s, omega)?.scale(-1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{RealField, Symmetry};
    use crate::grid::Grid;
    use crate::random::{random_real, rng};
    use crate::transform::transform_forward;

    fn shear(g: Grid) -> SpectralField {
        transform_forward(&RealField::from_fn(g, |_, y| y.cos()).unwrap()).unwrap()
    }

    fn params(a: f64, b: f64, c: f64, d: f64) -> ZakharovParams {
        ZakharovParams::new(a, b, c, d, Complex64::new(1.0, 1.0), ResonancePolicy::Error).unwrap()
    }

    #[test]
    fn vanishing_d1_rejected() {
        assert!(ZakharovParams::new(
            0.0,
            0.0,
            1.0,
            1.0,
            Complex64::new(0.0, 0.0),
            ResonancePolicy::Error
        )
        .is_err());
    }

    #[test]
    fn shear_on_resonant_line_is_unsolvable() {
        let g = Grid::new(16).unwrap();
        let err = zakharov_solve_s(&shear(g), &params(1.0, 0.0, 0.0, 1.0)).unwrap_err();
        match err {
            Error::Resonance { modes } => {
                assert_eq!(modes.len(), 2);
                assert!(modes.contains(&Mode::new(0, 1)) && modes.contains(&Mode::new(0, -1)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_gauge_records_violations() {
        let g = Grid::new(16).unwrap();
        let p = ZakharovParams {
            policy: ResonancePolicy::ZeroGauge,
            ..params(1.0, 0.0, 0.0, 1.0)
        };
        let sol = zakharov_solve_s(&shear(g), &p).unwrap();
        assert_eq!(sol.violated.len(), 2);
        assert_eq!(sol.s.max_abs_coeff(), 0.0);
    }

    #[test]
    fn irrational_direction_has_no_resonance() {
        let g = Grid::new(32).unwrap();
        let omega = random_real(g, 8, &mut rng(11)).unwrap();
        let sol = zakharov_solve_s(&omega, &params(1.0, 2f64.sqrt(), 0.0, 1.0)).unwrap();
        assert!(sol.violated.is_empty());
        for (i, k) in g.modes() {
            if k.is_zero() {
                continue;
            }
            let expected =
                omega.coeffs()[i] * (k.ky as f64 / (k.kx as f64 + 2f64.sqrt() * k.ky as f64));
            assert!((sol.s.coeffs()[i] - expected).norm() <= 1e-15 * expected.norm().max(1.0));
        }
        // D1 S = D2 Ω mode by mode
        for (i, k) in g.modes() {
            let p = params(1.0, 2f64.sqrt(), 0.0, 1.0);
            let lhs = sol.s.coeffs()[i] * p.d1(k);
            let rhs = omega.coeffs()[i] * p.d2(k);
            assert!((lhs - rhs).norm() < 1e-14);
        }
    }

    #[test]
    fn equal_operators_give_s_equal_omega() {
        let g = Grid::new(32).unwrap();
        let omega = random_real(g, 6, &mut rng(2)).unwrap();
        // on the resonant line k_x = 0 the right side D2Ω vanishes too, so no error
        let sol = zakharov_solve_s(&omega, &params(1.0, 0.0, 1.0, 0.0)).unwrap();
        assert!(sol.violated.is_empty());
        for (i, k) in g.modes() {
            if k.kx != 0 {
                assert_eq!(sol.s.coeffs()[i], omega.coeffs()[i]);
            } else {
                assert_eq!(sol.s.coeffs()[i], Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn collinear_shear_is_stationary() {
        let g = Grid::new(32).unwrap();
        let p = params(1.0, 2f64.sqrt(), 0.0, 1.0);
        let sol = zakharov_solve_s(&shear(g), &p).unwrap();
        let ratio = sol.s.coeff(Mode::new(0, 1)) / shear(g).coeff(Mode::new(0, 1));
        assert!((ratio.re - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!(zakharov_rhs(&shear(g), &p).unwrap().max_abs_coeff() < 1e-16);
        let zero = SpectralField::zeros(g, Symmetry::Real);
        assert_eq!(zakharov_rhs(&zero, &p).unwrap().max_abs_coeff(), 0.0);
    }

    #[test]
    fn two_mode_rhs_matches_hand_expansion() {
        // Ω = cos y + cos x with (α,β,γ,δ) = (1, √2, 0, 1):
        // S = cos y / √2 + 0·cos x, {cos y, cos x} = −sin x sin y, so −{S, Ω} = sin x sin y / √2.
        let g = Grid::new(32).unwrap();
        let omega =
            transform_forward(&RealField::from_fn(g, |x, y| y.cos() + x.cos()).unwrap()).unwrap();
        let rhs = zakharov_rhs(&omega, &params(1.0, 2f64.sqrt(), 0.0, 1.0)).unwrap();
        let expected = transform_forward(
            &RealField::from_fn(g, |x, y| x.sin() * y.sin() / 2f64.sqrt()).unwrap(),
        )
        .unwrap();
        assert!(rhs.sub(&expected).unwrap().max_abs_coeff() < 1e-15);
    }
}
