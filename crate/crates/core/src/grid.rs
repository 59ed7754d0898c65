//! Square periodic grid on `[0, 2π)²` and Fourier mode bookkeeping.
//!
//! Coefficients are stored in FFT order: storage index `ix` maps to the
//! wavenumber `ix` for `ix < n/2` and `ix - n` otherwise, so the retained
//! modes are `{-n/2, ..., n/2 - 1}` per axis.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// A lattice wavevector `(k_x, k_y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub kx: i64,
    pub ky: i64,
}

impl Mode {
    pub const ZERO: Mode = Mode { kx: 0, ky: 0 };

    pub const fn new(kx: i64, ky: i64) -> Self {
        Mode { kx, ky }
    }

    /// `max(|k_x|, |k_y|)`, the norm that defines bands and mode boxes.
    pub fn norm_inf(self) -> usize {
        self.kx.unsigned_abs().max(self.ky.unsigned_abs()) as usize
    }

    pub fn norm_sq(self) -> i64 {
        self.kx * self.kx + self.ky * self.ky
    }

    /// `p_x q_y - p_y q_x`
    pub fn cross(self, other: Mode) -> i64 {
        self.kx * other.ky - self.ky * other.kx
    }

    pub fn is_zero(self) -> bool {
        self.kx == 0 && self.ky == 0
    }
}

impl std::ops::Neg for Mode {
    type Output = Mode;
    fn neg(self) -> Mode {
        Mode::new(-self.kx, -self.ky)
    }
}

impl std::ops::Add for Mode {
    type Output = Mode;
    fn add(self, rhs: Mode) -> Mode {
        Mode::new(self.kx + rhs.kx, self.ky + rhs.ky)
    }
}

impl std::ops::Sub for Mode {
    type Output = Mode;
    fn sub(self, rhs: Mode) -> Mode {
        Mode::new(self.kx - rhs.kx, self.ky - rhs.ky)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.kx, self.ky)
    }
}

/// Derivative direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    n: usize,
}

impl Grid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid { n });
        }
        Ok(Grid { n })
    }

    /// Padded grids used internally for alias-free products may be smaller
    /// than the validation floor.
    pub(crate) fn padded(n: usize) -> Self {
        debug_assert!(n >= 2 && n.is_multiple_of(2));
        Grid { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of grid points (and of stored coefficients).
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest representable `|k|` per axis on the non-Nyquist side.
    pub fn max_mode(&self) -> usize {
        self.n / 2 - 1
    }

    pub fn nyquist(&self) -> i64 {
        -(self.n as i64 / 2)
    }

    /// Node coordinate `2π i / n`.
    pub fn coordinate(&self, i: usize) -> f64 {
        2.0 * PI * i as f64 / self.n as f64
    }

    pub fn wavenumber(&self, index: usize) -> i64 {
        let half = self.n / 2;
        if index < half {
            index as i64
        } else {
            index as i64 - self.n as i64
        }
    }

    pub fn contains(&self, mode: Mode) -> bool {
        let half = (self.n / 2) as i64;
        (-half..half).contains(&mode.kx) && (-half..half).contains(&mode.ky)
    }

    /// Flat coefficient index of `mode`, if it is representable.
    pub fn index_of(&self, mode: Mode) -> Option<usize> {
        if !self.contains(mode) {
            return None;
        }
        let n = self.n as i64;
        let ix = mode.kx.rem_euclid(n) as usize;
        let iy = mode.ky.rem_euclid(n) as usize;
        Some(ix * self.n + iy)
    }

    pub fn mode_at(&self, flat: usize) -> Mode {
        Mode::new(
            self.wavenumber(flat / self.n),
            self.wavenumber(flat % self.n),
        )
    }

    /// Flat index of `-k`, wrapping the Nyquist mode onto itself.
    pub(crate) fn conjugate_index(&self, flat: usize) -> usize {
        let (ix, iy) = (flat / self.n, flat % self.n);
        let cx = (self.n - ix) % self.n;
        let cy = (self.n - iy) % self.n;
        cx * self.n + cy
    }

    /// Iterator over `(flat index, mode)` in storage order.
    pub fn modes(&self) -> impl Iterator<Item = (usize, Mode)> + '_ {
        (0..self.len()).map(move |flat| (flat, self.mode_at(flat)))
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.n, self.n)
    }
}
