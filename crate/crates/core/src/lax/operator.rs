use faer::Mat;
use num_complex::Complex64;

use crate::error::Result;
use crate::field::SpectralField;
use crate::grid::Mode;
use crate::spectral::poisson_solve;

use super::modebox::ModeBox;

/// Which bracket operator a matrix truncates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// `Lφ = {Ω, φ}`
    L,
    /// `Aφ = {Ψ, φ}` with `ΔΨ = Ω`
    A,
}

/// Dense truncation `P {g, ·} P` on a [`ModeBox`].
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub kind: OperatorKind,
    pub modebox: ModeBox,
    pub entries: Mat<Complex64>,
}

/// Assembles `M[k, k'] = −(p × q)·ĝ_p` with `p = k − k'`, `q = k'`, where `ĝ`
/// is `Ω̂` for `L` and `Ψ̂` for `A`. `field` is always the vorticity.
pub fn assemble_operator(
    field: &SpectralField,
    kind: OperatorKind,
    modebox: &ModeBox,
) -> Result<OperatorMatrix> {
    modebox.check_fits(field.grid())?;
    let generator = match kind {
        OperatorKind::L => field.clone(),
        OperatorKind::A => poisson_solve(field)?,
    };
    let modes = modebox.modes();
    let dim = modebox.dim();
    let entries = Mat::from_fn(dim, dim, |i, j| {
        let (k, q) = (modes[i], modes[j]);
        let p = k - q;
        let g = generator.coeff(p);
        if g == Complex64::new(0.0, 0.0) {
            g
        } else {
            g * -(p.cross(q) as f64)
        }
    });
    Ok(OperatorMatrix {
        kind,
        modebox: modebox.clone(),
        entries,
    })
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.modebox.dim()
    }

    pub fn entry(&self, row: Mode, col: Mode) -> Option<Complex64> {
        Some(self.entries[(self.modebox.position(row)?, self.modebox.position(col)?)])
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm_l2()
    }

    /// `max |M + M†|`
    pub fn skew_hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = self.entries[(i, j)] + self.entries[(j, i)].conj();
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    /// `max |M[−k, −k'] − conj(M[k, k'])|`
    pub fn conjugation_defect(&self) -> f64 {
        let modes = self.modebox.modes();
        let n = self.dim();
        let mirror: Vec<usize> = modes
            .iter()
            .map(|&m| self.modebox.position(-m).expect("box is symmetric"))
            .collect();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let d = self.entries[(mirror[i], mirror[j])] - self.entries[(i, j)].conj();
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        assert_eq!(v.len(), n, "vector length must match box dimension");
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Applies to a field by projecting it onto the box first.
    pub fn apply_field(&self, phi: &SpectralField) -> Vec<Complex64> {
        self.apply(&self.modebox.project(phi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{initial_condition, IcParams};
    use crate::field::Symmetry;
    use crate::grid::Grid;

    #[test]
    fn zero_vorticity_gives_zero_matrix() {
        let g = Grid::new(16).unwrap();
        let m = assemble_operator(
            &SpectralField::zeros(g, Symmetry::Real),
            OperatorKind::L,
            &ModeBox::new(3),
        )
        .unwrap();
        assert_eq!(m.frobenius_norm(), 0.0);
    }

    #[test]
    fn shear_couples_neighbours_in_ky() {
        let g = Grid::new(32).unwrap();
        let omega = initial_condition("shear", &IcParams::new(), g, 0).unwrap();
        let b = ModeBox::new(4);
        let m = assemble_operator(&omega, OperatorKind::L, &b).unwrap();
        for &k in b.modes() {
            for &q in b.modes() {
                let e = m.entry(k, q).unwrap();
                let expected = if k.kx == q.kx && k.ky == q.ky + 1 {
                    q.kx as f64 / 2.0
                } else if k.kx == q.kx && k.ky == q.ky - 1 {
                    -(q.kx as f64) / 2.0
                } else {
                    0.0
                };
                assert_eq!(e, Complex64::new(expected, 0.0), "{k} {q}");
            }
        }
    }

    #[test]
    fn a_of_shear_is_minus_l() {
        let g = Grid::new(32).unwrap();
        let omega = initial_condition("shear", &IcParams::new(), g, 0).unwrap();
        let b = ModeBox::new(3);
        let l = assemble_operator(&omega, OperatorKind::L, &b).unwrap();
        let a = assemble_operator(&omega, OperatorKind::A, &b).unwrap();
        assert_eq!((&l.entries + &a.entries).norm_l2(), 0.0);
    }

    #[test]
    fn box_beyond_grid_rejected() {
        let g = Grid::new(16).unwrap();
        let omega = initial_condition("shear", &IcParams::new(), g, 0).unwrap();
        assert!(assemble_operator(&omega, OperatorKind::L, &ModeBox::new(8)).is_err());
    }
}
