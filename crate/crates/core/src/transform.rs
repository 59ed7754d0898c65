//! Forward and inverse 2D discrete Fourier transforms.
//!
//! The forward transform carries the `1/n²` normalization so coefficients
//! equal the analytic Fourier coefficients of band-limited functions.

use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::field::{ComplexField, RealField, SpectralField, Symmetry};
use crate::grid::Grid;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn transpose_square(data: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}

/// Unnormalized in-place 2D FFT of an `n × n` row-major buffer.
pub(crate) fn fft2(data: &mut [Complex64], n: usize, direction: FftDirection) {
    debug_assert_eq!(data.len(), n * n);
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft(n, direction));
    fft.process(data);
    transpose_square(data, n);
    fft.process(data);
    transpose_square(data, n);
}

/// Real physical field to spectral coefficients (exactly conjugate symmetric).
pub fn transform_forward(f: &RealField) -> Result<SpectralField> {
    if f.values().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            what: "transform input".into(),
        });
    }
    let grid = f.grid();
    let mut data: Vec<Complex64> = f.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    forward_in_place(&mut data, grid);
    Ok(SpectralField::from_parts(grid, data, None, Symmetry::Real))
}

/// Complex physical field to spectral coefficients.
pub fn transform_forward_complex(f: &ComplexField) -> Result<SpectralField> {
    if f.values().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            what: "transform input".into(),
        });
    }
    let grid = f.grid();
    let mut data = f.values().to_vec();
    forward_in_place(&mut data, grid);
    Ok(SpectralField::from_parts(
        grid,
        data,
        None,
        Symmetry::Complex,
    ))
}

fn forward_in_place(data: &mut [Complex64], grid: Grid) {
    let n = grid.n();
    fft2(data, n, FftDirection::Forward);
    let norm = 1.0 / (n * n) as f64;
    data.iter_mut().for_each(|c| *c *= norm);
}

/// Synthesizes `f(x_j) = Σ_k f̂_k e^{i k·x_j}` as complex samples.
pub fn transform_inverse(fh: &SpectralField) -> ComplexField {
    let grid = fh.grid();
    let mut data = fh.coeffs().to_vec();
    fft2(&mut data, grid.n(), FftDirection::Inverse);
    ComplexField::new(grid, data).expect("inverse of finite coefficients is finite")
}

/// Synthesizes a real field; the coefficients must be conjugate symmetric
/// to within `1e-12` relative. Imaginary round-off is discarded.
pub fn transform_inverse_real(fh: &SpectralField) -> Result<RealField> {
    let defect = fh.symmetry_defect();
    if defect > (1e-12 * fh.norm()).max(1e-13) {
        return Err(Error::SymmetryViolated { defect });
    }
    let complex = transform_inverse(fh);
    let values = complex.values().iter().map(|c| c.re).collect();
    RealField::new(fh.grid(), values)
}
