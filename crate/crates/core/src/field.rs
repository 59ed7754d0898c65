//! Physical- and Fourier-space scalar fields on a [`Grid`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Grid, Mode};

/// Whether a spectral field represents a real-valued function.
///
/// Real fields (vorticity, stream function, S) carry exact conjugate
/// symmetry `f̂(-k) = conj(f̂(k))`; eigenfunction candidates are complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Real,
    Complex,
}

impl Symmetry {
    pub fn combine(self, other: Symmetry) -> Symmetry {
        if self == Symmetry::Real && other == Symmetry::Real {
            Symmetry::Real
        } else {
            Symmetry::Complex
        }
    }
}

/// Real samples `f(x_i, y_j)` stored row-major with the x index outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    grid: Grid,
    values: Vec<f64>,
}

impl RealField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter {
                name: "values".into(),
                reason: format!("expected {} samples, got {}", grid.len(), values.len()),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "real field".into(),
            });
        }
        Ok(RealField { grid, values })
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let n = grid.n();
        let values = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| f(grid.coordinate(i), grid.coordinate(j)))
            .collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.n() + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `sqrt(mean(f²))`, equal to the coefficient 2-norm by Parseval.
    pub fn rms(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() / self.values.len() as f64).sqrt()
    }
}

/// Complex samples on the grid, same layout as [`RealField`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: Grid,
    values: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter {
                name: "values".into(),
                reason: format!("expected {} samples, got {}", grid.len(), values.len()),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "complex field".into(),
            });
        }
        Ok(ComplexField { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        let n = grid.n();
        let values = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| f(grid.coordinate(i), grid.coordinate(j)))
            .collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.grid.n() + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }
}

/// Relative size below which out-of-band coefficients count as roundoff
/// when a band is declared.
pub const BAND_ROUNDOFF: f64 = 1e-14;

/// Fourier coefficients `f̂_k` with `f(x) = Σ_k f̂_k e^{i k·x}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex64>,
    band: Option<usize>,
    symmetry: Symmetry,
}

impl SpectralField {
    pub fn zeros(grid: Grid, symmetry: Symmetry) -> Self {
        SpectralField {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
            band: Some(0),
            symmetry,
        }
    }

    /// Builds a field from raw coefficients in storage order. Real fields
    /// are checked for conjugate symmetry and then symmetrized exactly.
    pub fn from_coeffs(grid: Grid, coeffs: Vec<Complex64>, symmetry: Symmetry) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::InvalidParameter {
                name: "coeffs".into(),
                reason: format!("expected {} coefficients, got {}", grid.len(), coeffs.len()),
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                what: "spectral coefficients".into(),
            });
        }
        let mut field = SpectralField {
            grid,
            coeffs,
            band: None,
            symmetry,
        };
        if symmetry == Symmetry::Real {
            let defect = field.symmetry_defect();
            if defect > 1e-12 * field.norm().max(f64::MIN_POSITIVE) && defect > 1e-13 {
                return Err(Error::SymmetryViolated { defect });
            }
            field.symmetrize();
        }
        Ok(field)
    }

    /// Builds a field from a sparse list of `(mode, coefficient)` pairs.
    /// For real fields each pair also sets the conjugate mode.
    pub fn from_modes(grid: Grid, symmetry: Symmetry, modes: &[(Mode, Complex64)]) -> Result<Self> {
        let mut field = SpectralField::zeros(grid, symmetry);
        field.band = None;
        for &(mode, c) in modes {
            let idx = grid.index_of(mode).ok_or(Error::BandOverflow {
                band: mode.norm_inf(),
                n: grid.n(),
                required: 2 * mode.norm_inf() + 2,
            })?;
            field.coeffs[idx] = c;
            if symmetry == Symmetry::Real {
                field.coeffs[grid.conjugate_index(idx)] = c.conj();
            }
        }
        if symmetry == Symmetry::Real {
            field.symmetrize();
        }
        let band = field.support_band();
        field.band = Some(band);
        Ok(field)
    }

    pub(crate) fn from_parts(
        grid: Grid,
        coeffs: Vec<Complex64>,
        band: Option<usize>,
        symmetry: Symmetry,
    ) -> Self {
        debug_assert_eq!(coeffs.len(), grid.len());
        let mut f = SpectralField {
            grid,
            coeffs,
            band,
            symmetry,
        };
        if symmetry == Symmetry::Real {
            f.symmetrize();
        }
        f
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn band(&self) -> Option<usize> {
        self.band
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn is_real(&self) -> bool {
        self.symmetry == Symmetry::Real
    }

    /// Coefficient at `mode`; zero for modes outside the grid.
    pub fn coeff(&self, mode: Mode) -> Complex64 {
        self.grid
            .index_of(mode)
            .map_or(Complex64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Coefficient 2-norm, equal to the RMS of the physical field.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Smallest `B` with all coefficients beyond `max(|k_x|,|k_y|) > B` zero.
    pub fn support_band(&self) -> usize {
        self.grid
            .modes()
            .filter(|&(i, _)| self.coeffs[i] != Complex64::new(0.0, 0.0))
            .map(|(_, m)| m.norm_inf())
            .max()
            .unwrap_or(0)
    }

    /// Declares band `B`. Out-of-band coefficients below
    /// [`BAND_ROUNDOFF`] times the largest coefficient are treated as transform
    /// roundoff and cleared; anything larger is an error.
    pub fn with_band(self, band: usize) -> Result<Self> {
        let floor = BAND_ROUNDOFF * self.max_abs_coeff();
        let outside = self
            .grid
            .modes()
            .filter(|&(_, m)| m.norm_inf() > band)
            .fold(0.0f64, |acc, (i, _)| acc.max(self.coeffs[i].norm()));
        if outside > floor {
            return Err(Error::OutOfBand { band });
        }
        Ok(self.truncated(band).with_exact_band(band))
    }

    fn with_exact_band(mut self, band: usize) -> Self {
        self.band = Some(band);
        self
    }

    /// Declares the tightest band that [`SpectralField::with_band`] accepts.
    pub fn with_detected_band(self) -> Self {
        let floor = BAND_ROUNDOFF * self.max_abs_coeff();
        let band = self
            .grid
            .modes()
            .filter(|&(i, _)| self.coeffs[i].norm() > floor)
            .map(|(_, m)| m.norm_inf())
            .max()
            .unwrap_or(0);
        self.truncated(band).with_exact_band(band)
    }

    /// Zeroes every coefficient with `max(|k_x|,|k_y|) > band`.
    pub fn truncated(&self, band: usize) -> Self {
        let mut out = self.clone();
        for (i, m) in self.grid.modes() {
            if m.norm_inf() > band {
                out.coeffs[i] = Complex64::new(0.0, 0.0);
            }
        }
        out.band = Some(self.band.map_or(band, |b| b.min(band)));
        out
    }

    /// `max_k |f̂_{-k} - conj(f̂_k)|`; zero for exactly symmetric fields.
    pub fn symmetry_defect(&self) -> f64 {
        (0..self.coeffs.len())
            .map(|i| (self.coeffs[self.grid.conjugate_index(i)] - self.coeffs[i].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Projects onto the conjugate-symmetric subspace; the Nyquist
    /// self-conjugate modes become real.
    pub(crate) fn symmetrize(&mut self) {
        for i in 0..self.coeffs.len() {
            let j = self.grid.conjugate_index(i);
            if j < i {
                continue;
            }
            let avg = (self.coeffs[i] + self.coeffs[j].conj()) * 0.5;
            self.coeffs[i] = avg;
            self.coeffs[j] = avg.conj();
        }
    }

    pub fn as_complex(&self) -> Self {
        SpectralField {
            symmetry: Symmetry::Complex,
            ..self.clone()
        }
    }

    /// Reinterprets as real-valued, failing if symmetry is violated.
    pub fn into_real(self) -> Result<Self> {
        Self::from_coeffs(self.grid, self.coeffs, Symmetry::Real).map(|f| SpectralField {
            band: self.band,
            ..f
        })
    }

    fn check_grid(&self, other: &SpectralField) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch {
                left: self.grid.n(),
                right: other.grid.n(),
            });
        }
        Ok(())
    }

    fn merged_band(&self, other: &SpectralField) -> Option<usize> {
        Some(self.band?.max(other.band?))
    }

    pub fn scale(&self, a: f64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= a);
        out
    }

    /// Complex scaling; the result is flagged complex unless `a` is real.
    pub fn scale_complex(&self, a: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= a);
        if a.im != 0.0 {
            out.symmetry = Symmetry::Complex;
        }
        out
    }

    /// `self + a * other`
    pub fn axpy(&self, a: f64, other: &SpectralField) -> Result<Self> {
        self.check_grid(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x + y * a)
            .collect();
        Ok(SpectralField {
            grid: self.grid,
            coeffs,
            band: self.merged_band(other),
            symmetry: self.symmetry.combine(other.symmetry),
        })
    }

    pub fn add(&self, other: &SpectralField) -> Result<Self> {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &SpectralField) -> Result<Self> {
        self.axpy(-1.0, other)
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub(crate) fn set_band(&mut self, band: Option<usize>) {
        self.band = band;
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn from_modes_sets_conjugate_partner() {
        let g = Grid::new(8).unwrap();
        let f = SpectralField::from_modes(g, Symmetry::Real, &[(Mode::new(1, 2), c(0.5, 0.25))])
            .unwrap();
        assert_eq!(f.coeff(Mode::new(-1, -2)), c(0.5, -0.25));
        assert_eq!(f.band(), Some(2));
        assert_eq!(f.symmetry_defect(), 0.0);
    }

    #[test]
    fn nyquist_coefficient_of_real_field_is_real() {
        let g = Grid::new(8).unwrap();
        let f = SpectralField::from_modes(g, Symmetry::Real, &[(Mode::new(-4, 0), c(1.0, 0.5))])
            .unwrap();
        assert_eq!(f.coeff(Mode::new(-4, 0)).im, 0.0);
    }

    #[test]
    fn asymmetric_coefficients_rejected_for_real_field() {
        let g = Grid::new(8).unwrap();
        let mut coeffs = vec![c(0.0, 0.0); g.len()];
        coeffs[g.index_of(Mode::new(1, 0)).unwrap()] = c(1.0, 0.0);
        assert!(matches!(
            SpectralField::from_coeffs(g, coeffs.clone(), Symmetry::Real),
            Err(Error::SymmetryViolated { .. })
        ));
        assert!(SpectralField::from_coeffs(g, coeffs, Symmetry::Complex).is_ok());
    }

    #[test]
    fn with_band_rejects_out_of_band_content() {
        let g = Grid::new(16).unwrap();
        let f = SpectralField::from_modes(g, Symmetry::Real, &[(Mode::new(3, 1), c(1.0, 0.0))])
            .unwrap();
        assert!(f.clone().with_band(2).is_err());
        assert_eq!(f.clone().with_band(5).unwrap().band(), Some(5));
        let t = f.truncated(2);
        assert_eq!(t.norm(), 0.0);
    }

    #[test]
    fn non_finite_coefficients_rejected() {
        let g = Grid::new(8).unwrap();
        let mut coeffs = vec![c(0.0, 0.0); g.len()];
        coeffs[3] = c(f64::NAN, 0.0);
        assert!(matches!(
            SpectralField::from_coeffs(g, coeffs, Symmetry::Complex),
            Err(Error::NonFinite { .. })
        ));
    }
}
