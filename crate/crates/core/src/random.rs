//! Seeded band-limited random fields.
//!
//! Coefficients are drawn from a ChaCha8 stream in a fixed mode order, so a
//! given `(grid, band, seed)` always produces bit-identical fields.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::field::{SpectralField, Symmetry};
use crate::grid::{Grid, Mode};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_band(grid: Grid, band: usize) -> Result<()> {
    if band > grid.max_mode() {
        return Err(Error::BandOverflow {
            band,
            n: grid.n(),
            required: 2 * band + 2,
        });
    }
    Ok(())
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Real zero-mean field with independent complex Gaussian coefficients on
/// the half lattice `max(|k_x|,|k_y|) ≤ band`, unnormalized.
pub fn random_real(grid: Grid, band: usize, rng: &mut ChaCha8Rng) -> Result<SpectralField> {
    check_band(grid, band)?;
    let b = band as i64;
    let mut modes = Vec::new();
    for kx in 0..=b {
        for ky in -b..=b {
            if kx == 0 && ky <= 0 {
                continue;
            }
            modes.push((Mode::new(kx, ky), gaussian(rng)));
        }
    }
    let f = SpectralField::from_modes(grid, Symmetry::Real, &modes)?;
    f.with_band(band)
}

/// Complex field with independent Gaussian coefficients on the full box,
/// including the mean mode.
pub fn random_complex(grid: Grid, band: usize, rng: &mut ChaCha8Rng) -> Result<SpectralField> {
    check_band(grid, band)?;
    let b = band as i64;
    let mut modes = Vec::new();
    for kx in -b..=b {
        for ky in -b..=b {
            modes.push((Mode::new(kx, ky), gaussian(rng)));
        }
    }
    let f = SpectralField::from_modes(grid, Symmetry::Complex, &modes)?;
    f.with_band(band)
}
