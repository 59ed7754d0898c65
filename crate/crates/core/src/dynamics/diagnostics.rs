use num_complex::Complex64;

use crate::field::SpectralField;
use crate::spectral::{padded_size, synthesize};

/// Quadratic and Casimir invariants of the vorticity equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub energy: f64,
    pub enstrophy: f64,
    pub casimir3: f64,
    pub casimir4: f64,
}

/// `C_p = (2π)⁻² ∫ Ωᵖ`, evaluated on a padded grid on which the band
/// `p·B` power aliases nothing onto the mean mode.
pub fn casimir(omega: &SpectralField, power: u32) -> f64 {
    let band = omega.band().unwrap_or_else(|| omega.support_band());
    if band == 0 || power == 0 {
        return omega.mean().re.powi(power as i32);
    }
    let m = padded_size((power as usize * band).div_ceil(2));
    let samples = synthesize(omega, band, m, |_| Complex64::new(1.0, 0.0));
    samples.iter().map(|v| v.re.powi(power as i32)).sum::<f64>() / (m * m) as f64
}

pub fn diagnostics(omega: &SpectralField) -> Diagnostics {
    let grid = omega.grid();
    let mut energy = 0.0;
    let mut enstrophy = 0.0;
    for (c, (_, k)) in omega.coeffs().iter().zip(grid.modes()) {
        let a = c.norm_sqr();
        enstrophy += a;
        if !k.is_zero() {
            energy += a / k.norm_sq() as f64;
        }
    }
    Diagnostics {
        energy: 0.5 * energy,
        enstrophy: 0.5 * enstrophy,
        casimir3: casimir(omega, 3),
        casimir4: casimir(omega, 4),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{initial_condition, IcParams};
    use crate::field::Symmetry;
    use crate::grid::Grid;

    #[test]
    fn shear_invariants() {
        // ½·2·(½)² = ¼ for both E and Z; mean(cos³) = 0, mean(cos⁴) = 3/8
        let g = Grid::new(16).unwrap();
        let d = diagnostics(&initial_condition("shear", &IcParams::new(), g, 0).unwrap());
        assert!((d.energy - 0.25).abs() < 1e-15);
        assert!((d.enstrophy - 0.25).abs() < 1e-15);
        assert!(d.casimir3.abs() < 1e-15);
        assert!((d.casimir4 - 0.375).abs() < 1e-15);
    }

    #[test]
    fn zero_field_has_zero_invariants() {
        let g = Grid::new(16).unwrap();
        let d = diagnostics(&SpectralField::zeros(g, Symmetry::Real));
        assert_eq!(
            d,
            Diagnostics {
                energy: 0.0,
                enstrophy: 0.0,
                casimir3: 0.0,
                casimir4: 0.0
            }
        );
    }

    #[test]
    fn doubling_quadruples_quadratic_invariants() {
        let g = Grid::new(32).unwrap();
        let p = IcParams::from([("band".to_string(), 5.0)]);
        let omega = initial_condition("random-band", &p, g, 9).unwrap();
        let (a, b) = (diagnostics(&omega), diagnostics(&omega.scale(2.0)));
        assert!((b.energy - 4.0 * a.energy).abs() < 1e-14 * b.energy);
        assert!((b.enstrophy - 4.0 * a.enstrophy).abs() < 1e-14 * b.enstrophy);
        assert!((b.casimir4 - 16.0 * a.casimir4).abs() < 1e-12 * b.casimir4);
    }

    #[test]
    fn casimir_matches_fine_grid_quadrature() {
        // Brute-force oracle: sample the trigonometric polynomial directly on
        // a 97-point grid (exact for degree ≤ 96) and average Ω³, Ω⁴.
        let g = Grid::new(32).unwrap();
        let p = IcParams::from([("band".to_string(), 4.0)]);
        let omega = initial_condition("random-band", &p, g, 5).unwrap();
        let q = 97;
        let (mut c3, mut c4) = (0.0, 0.0);
        for i in 0..q {
            for j in 0..q {
                let (x, y) = (
                    2.0 * std::f64::consts::PI * i as f64 / q as f64,
                    2.0 * std::f64::consts::PI * j as f64 / q as f64,
                );
                let v: f64 = g
                    .modes()
                    .map(|(idx, k)| {
                        (omega.coeffs()[idx]
                            * Complex64::from_polar(1.0, k.kx as f64 * x + k.ky as f64 * y))
                        .re
                    })
                    .sum();
                c3 += v.powi(3);
                c4 += v.powi(4);
            }
        }
        let n2 = (q * q) as f64;
        let d = diagnostics(&omega);
        assert!((d.casimir3 - c3 / n2).abs() < 1e-12);
        assert!((d.casimir4 - c4 / n2).abs() < 1e-12);
    }
}
