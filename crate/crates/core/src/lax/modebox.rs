use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{SpectralField, Symmetry};
use crate::grid::{Grid, Mode};

/// The modes `0 < max(|k_x|,|k_y|) ≤ K` in lexicographic `(k_x, k_y)` order.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeBox {
    radius: usize,
    modes: Vec<Mode>,
    positions: HashMap<Mode, usize>,
}

impl ModeBox {
    pub fn new(radius: usize) -> Self {
        let k = radius as i64;
        let modes: Vec<Mode> = (-k..=k)
            .flat_map(|kx| (-k..=k).map(move |ky| Mode::new(kx, ky)))
            .filter(|m| !m.is_zero())
            .collect();
        let positions = modes.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        ModeBox {
            radius,
            modes,
            positions,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// `(2K + 1)² − 1`
    pub fn dim(&self) -> usize {
        self.modes.len()
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn position(&self, mode: Mode) -> Option<usize> {
        self.positions.get(&mode).copied()
    }

    pub fn check_fits(&self, grid: Grid) -> Result<()> {
        if self.radius > grid.max_mode() {
            return Err(Error::BoxTooLarge {
                k: self.radius,
                n: grid.n(),
                max: grid.max_mode(),
            });
        }
        Ok(())
    }

    /// Coefficients of `field` on the box, in box order.
    pub fn project(&self, field: &SpectralField) -> Vec<Complex64> {
        self.modes.iter().map(|&m| field.coeff(m)).collect()
    }

    /// Inverse of [`ModeBox::project`]: a complex field with band `K`.
    pub fn lift(&self, grid: Grid, values: &[Complex64]) -> Result<SpectralField> {
        self.check_fits(grid)?;
        let pairs: Vec<_> = self
            .modes
            .iter()
            .copied()
            .zip(values.iter().copied())
            .collect();
        SpectralField::from_modes(grid, Symmetry::Complex, &pairs)?.with_band(self.radius)
    }
}
