//! Spectral derivatives, Poisson brackets and the stream-function solve.
//!
//! Two bracket evaluators are provided. [`bracket_exact`] zero-pads both
//! operands to a grid large enough that the quadratic products carry no
//! aliasing, so the result equals the continuous bracket of the band-limited
//! inputs up to round-off. [`bracket_dealiased`] applies the 2/3 rule on the
//! native grid and is what the time stepper uses.

use num_complex::Complex64;
use rustfft::FftDirection;

use crate::error::{Error, Result};
use crate::field::{RealField, SpectralField, Symmetry};
use crate::grid::{Axis, Grid, Mode};
use crate::transform::{fft2, transform_inverse_real};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Fourier symbol of `∂_axis` on `grid`; the Nyquist wavenumber maps to 0.
pub fn derivative_symbol(grid: Grid, mode: Mode, axis: Axis) -> Complex64 {
    let k = match axis {
        Axis::X => mode.kx,
        Axis::Y => mode.ky,
    };
    if k == grid.nyquist() {
        ZERO
    } else {
        Complex64::new(0.0, k as f64)
    }
}

pub fn spectral_derivative(fh: &SpectralField, axis: Axis) -> SpectralField {
    let grid = fh.grid();
    let mut out = fh.clone();
    for (c, (_, m)) in out.coeffs_mut().iter_mut().zip(grid.modes()) {
        *c *= derivative_symbol(grid, m, axis);
    }
    out
}

/// `Δf`, i.e. multiplication by `-|k|²`.
pub fn laplacian(fh: &SpectralField) -> SpectralField {
    let grid = fh.grid();
    let mut out = fh.clone();
    for (c, (_, m)) in out.coeffs_mut().iter_mut().zip(grid.modes()) {
        *c *= -(m.norm_sq() as f64);
    }
    out
}

/// Smallest FFT-friendly even size `M ≥ 2·band + 2`.
pub fn padded_size(band: usize) -> usize {
    let mut m = (2 * band + 2).max(8);
    loop {
        if m.is_multiple_of(2) && is_smooth(m) {
            return m;
        }
        m += 1;
    }
}

fn is_smooth(mut m: usize) -> bool {
    for p in [2, 3, 5] {
        while m.is_multiple_of(p) {
            m /= p;
        }
    }
    m == 1
}

/// Synthesizes `symbol(k) · f̂_k` for `max|k| ≤ band` on an `m × m` grid.
pub(crate) fn synthesize(
    fh: &SpectralField,
    band: usize,
    m: usize,
    symbol: impl Fn(Mode) -> Complex64,
) -> Vec<Complex64> {
    let padded = Grid::padded(m);
    let mut data = vec![ZERO; m * m];
    for (i, mode) in fh.grid().modes() {
        let c = fh.coeffs()[i];
        if c == ZERO || mode.norm_inf() > band {
            continue;
        }
        let j = padded.index_of(mode).expect("padded grid holds the band");
        data[j] = c * symbol(mode);
    }
    fft2(&mut data, m, FftDirection::Inverse);
    data
}

/// Analyzes `m × m` samples and keeps modes with `max|k| ≤ band` on `grid`.
fn analyze(
    mut data: Vec<Complex64>,
    m: usize,
    grid: Grid,
    band: usize,
    symmetry: Symmetry,
) -> SpectralField {
    fft2(&mut data, m, FftDirection::Forward);
    let norm = 1.0 / (m * m) as f64;
    let padded = Grid::padded(m);
    let mut coeffs = vec![ZERO; grid.len()];
    for (i, mode) in grid.modes() {
        if mode.norm_inf() > band {
            continue;
        }
        if let Some(j) = padded.index_of(mode) {
            coeffs[i] = data[j] * norm;
        }
    }
    SpectralField::from_parts(grid, coeffs, Some(band), symmetry)
}

fn same_grid(f: &SpectralField, g: &SpectralField) -> Result<Grid> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch {
            left: f.grid().n(),
            right: g.grid().n(),
        });
    }
    Ok(f.grid())
}

fn exact_bands(f: &SpectralField, g: &SpectralField) -> Result<(Grid, usize, usize, usize)> {
    let grid = same_grid(f, g)?;
    let (bf, bg) = match (f.band(), g.band()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::MissingBand),
    };
    let out = bf + bg;
    if out > grid.max_mode() {
        return Err(Error::BandOverflow {
            band: out,
            n: grid.n(),
            required: 2 * out + 2,
        });
    }
    Ok((grid, bf, bg, out))
}

/// `f ↦ (∂_x f, ∂_y f)` sampled on an `m × m` grid.
fn gradient_samples(fh: &SpectralField, band: usize, m: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let grid = fh.grid();
    let dx = synthesize(fh, band, m, |k| derivative_symbol(grid, k, Axis::X));
    let dy = synthesize(fh, band, m, |k| derivative_symbol(grid, k, Axis::Y));
    (dx, dy)
}

fn bracket_on(
    f: &SpectralField,
    g: &SpectralField,
    input_band: usize,
    m: usize,
    output_band: usize,
) -> SpectralField {
    let (fx, fy) = gradient_samples(f, input_band, m);
    let (gx, gy) = gradient_samples(g, input_band, m);
    let prod: Vec<Complex64> = fx
        .iter()
        .zip(&gy)
        .zip(fy.iter().zip(&gx))
        .map(|((a, b), (c, d))| a * b - c * d)
        .collect();
    analyze(
        prod,
        m,
        f.grid(),
        output_band,
        f.symmetry().combine(g.symmetry()),
    )
}

/// Alias-free `{f, g} = ∂_x f ∂_y g − ∂_y f ∂_x g` for band-limited inputs.
///
/// Both operands must declare bands `B₁`, `B₂`; the result has band
/// `B₁ + B₂`, which must be representable on the native grid.
pub fn bracket_exact(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    let (_, bf, bg, out) = exact_bands(f, g)?;
    let m = padded_size(out);
    Ok(bracket_on(f, g, bf.max(bg), m, out))
}

/// Alias-free pointwise product `f g` of band-limited inputs.
pub fn product_exact(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    let (_, bf, bg, out) = exact_bands(f, g)?;
    let m = padded_size(out);
    let a = synthesize(f, bf, m, |_| Complex64::new(1.0, 0.0));
    let b = synthesize(g, bg, m, |_| Complex64::new(1.0, 0.0));
    let prod = a.iter().zip(&b).map(|(x, y)| x * y).collect();
    Ok(analyze(
        prod,
        m,
        f.grid(),
        out,
        f.symmetry().combine(g.symmetry()),
    ))
}

/// Largest retained `max(|k_x|,|k_y|)` under the 2/3 rule: the largest
/// integer strictly below `n/3`.
pub fn dealias_cutoff(grid: Grid) -> usize {
    (grid.n() - 1) / 3
}

/// Bracket on the native grid with 2/3-rule truncation of inputs and output.
pub fn bracket_dealiased(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    let grid = same_grid(f, g)?;
    let cut = dealias_cutoff(grid);
    Ok(bracket_on(f, g, cut, grid.n(), cut))
}

/// Native-grid bracket with no truncation at all. Quadratic products alias
/// back onto retained modes; kept only as a negative control for the
/// identity checks.
pub fn bracket_aliased(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    let grid = same_grid(f, g)?;
    let half = grid.n() / 2;
    let mut out = bracket_on(f, g, half, grid.n(), half);
    out.set_band(None);
    Ok(out)
}

/// Solves `ΔΨ = Ω` with the zero-mean gauge `Ψ̂_0 = 0`.
pub fn poisson_solve(omega: &SpectralField) -> Result<SpectralField> {
    let tolerance = 1e-12 * omega.norm();
    let mean = omega.mean().norm();
    if mean > tolerance {
        return Err(Error::NonZeroMean { mean, tolerance });
    }
    let grid = omega.grid();
    let mut psi = omega.clone();
    for (c, (_, m)) in psi.coeffs_mut().iter_mut().zip(grid.modes()) {
        if m.is_zero() {
            *c = ZERO;
        } else {
            *c /= -(m.norm_sq() as f64);
        }
    }
    Ok(psi)
}

/// `u = −∂_y Ψ`, `v = ∂_x Ψ` in physical space.
pub fn velocity_from_stream(psi: &SpectralField) -> Result<(RealField, RealField)> {
    let u = spectral_derivative(psi, Axis::Y).scale(-1.0);
    let v = spectral_derivative(psi, Axis::X);
    Ok((transform_inverse_real(&u)?, transform_inverse_real(&v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::transform_forward;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid(n: usize) -> Grid {
        Grid::new(n).unwrap()
    }

    fn real(g: Grid, f: impl Fn(f64, f64) -> f64) -> SpectralField {
        transform_forward(&RealField::from_fn(g, f).unwrap())
            .unwrap()
            .with_detected_band()
    }

    fn max_diff(a: &SpectralField, b: &SpectralField) -> f64 {
        a.sub(b).unwrap().max_abs_coeff()
    }

    #[test]
    fn derivative_of_cos_x() {
        let g = grid(16);
        let f = real(g, |x, _| x.cos());
        assert!(max_diff(&spectral_derivative(&f, Axis::X), &real(g, |x, _| -x.sin())) < 1e-15);
        assert_eq!(spectral_derivative(&f, Axis::Y).max_abs_coeff(), 0.0);
    }

    #[test]
    fn derivative_of_plane_wave() {
        let g = grid(16);
        let f = SpectralField::from_modes(g, Symmetry::Complex, &[(Mode::new(2, 3), c(1.0, 0.0))])
            .unwrap();
        let d = spectral_derivative(&f, Axis::X);
        assert_eq!(d.coeff(Mode::new(2, 3)), c(0.0, 2.0));
        assert!(d.norm() - 2.0 < 1e-15);
    }

    #[test]
    fn nyquist_derivative_is_zero() {
        let g = grid(8);
        let f = SpectralField::from_modes(g, Symmetry::Real, &[(Mode::new(-4, 1), c(1.0, 0.0))])
            .unwrap();
        assert_eq!(spectral_derivative(&f, Axis::X).max_abs_coeff(), 0.0);
        assert!(spectral_derivative(&f, Axis::Y).max_abs_coeff() > 0.0);
    }

    #[test]
    fn self_bracket_vanishes_exactly() {
        let g = grid(32);
        let f = real(g, |x, y| (x + 2.0 * y).sin() + 0.3 * (3.0 * x).cos());
        let b = bracket_exact(&f, &f).unwrap();
        assert_eq!(b.max_abs_coeff(), 0.0);
    }

    #[test]
    fn bracket_of_cos_y_and_sin_x() {
        // (∂x cos y)(∂y sin x) − (∂y cos y)(∂x sin x) = sin y cos x
        let g = grid(16);
        let b = bracket_exact(&real(g, |_, y| y.cos()), &real(g, |x, _| x.sin())).unwrap();
        assert!(max_diff(&b, &real(g, |x, y| y.sin() * x.cos())) < 1e-15);
        assert_eq!(b.band(), Some(2));
    }

    #[test]
    fn bracket_of_plane_waves() {
        let g = grid(32);
        let (p, q) = (Mode::new(2, -1), Mode::new(1, 3));
        let f = SpectralField::from_modes(g, Symmetry::Complex, &[(p, c(1.0, 0.0))]).unwrap();
        let h = SpectralField::from_modes(g, Symmetry::Complex, &[(q, c(1.0, 0.0))]).unwrap();
        let b = bracket_exact(&f, &h).unwrap();
        let expected = -(p.cross(q) as f64);
        assert!((b.coeff(p + q) - c(expected, 0.0)).norm() < 1e-13);
        assert!((b.norm() - expected.abs()).abs() < 1e-13);
    }

    #[test]
    fn exact_bracket_requires_bands() {
        let g = grid(16);
        let f = transform_forward(&RealField::from_fn(g, |x, _| x.cos()).unwrap()).unwrap();
        assert_eq!(bracket_exact(&f, &f), Err(Error::MissingBand));
        let f = f.with_band(5).unwrap();
        assert!(matches!(
            bracket_exact(&f, &f),
            Err(Error::BandOverflow { required: 22, .. })
        ));
    }

    #[test]
    fn dealiased_self_bracket_vanishes() {
        let g = grid(32);
        let f = real(g, |_, y| y.cos());
        assert!(bracket_dealiased(&f, &f).unwrap().max_abs_coeff() <= 1e-13);
    }

    #[test]
    fn dealias_cutoff_is_strictly_below_a_third() {
        assert_eq!(dealias_cutoff(grid(128)), 42);
        assert_eq!(dealias_cutoff(grid(96)), 31);
        assert_eq!(dealias_cutoff(grid(64)), 21);
    }

    #[test]
    fn poisson_examples() {
        let g = grid(16);
        let psi = poisson_solve(&real(g, |x, y| 2.0 * x.cos() * y.cos())).unwrap();
        assert!(max_diff(&psi, &real(g, |x, y| -x.cos() * y.cos())) < 1e-15);
        let psi = poisson_solve(&real(g, |_, y| y.cos())).unwrap();
        assert!(max_diff(&psi, &real(g, |_, y| -y.cos())) < 1e-15);
        let psi = poisson_solve(&SpectralField::zeros(g, Symmetry::Real)).unwrap();
        assert_eq!(psi.max_abs_coeff(), 0.0);
    }

    #[test]
    fn poisson_rejects_nonzero_mean() {
        let g = grid(16);
        let err = poisson_solve(&real(g, |_, y| 1.0 + y.cos())).unwrap_err();
        assert!(matches!(err, Error::NonZeroMean { .. }));
        assert!(err.to_string().contains("unsolvable"));
    }

    #[test]
    fn velocity_of_shear_stream() {
        let g = grid(16);
        let (u, v) = velocity_from_stream(&real(g, |_, y| -y.cos())).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                let y = g.coordinate(j);
                assert!((u.at(i, j) + y.sin()).abs() < 1e-14);
                assert!(v.at(i, j).abs() < 1e-14);
            }
        }
        let (u, v) = velocity_from_stream(&SpectralField::zeros(g, Symmetry::Real)).unwrap();
        assert_eq!(u.max_abs() + v.max_abs(), 0.0);
    }
}
