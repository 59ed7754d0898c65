use std::cmp::Ordering;

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::operator::OperatorMatrix;

/// Eigenvalues with matching eigenvector columns, in [`spectral_order`].
#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub values: Vec<Complex64>,
    pub vectors: Mat<Complex64>,
}

/// Sort key: imaginary part, then real part, then magnitude.
pub fn spectral_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.im.total_cmp(&b.im)
        .then(a.re.total_cmp(&b.re))
        .then(a.norm().total_cmp(&b.norm()))
}

pub fn sort_spectrum(values: &mut [Complex64]) {
    values.sort_by(spectral_order);
}

fn eigen_error(m: &OperatorMatrix, e: impl std::fmt::Debug) -> Error {
    Error::Eigen {
        norm: m.frobenius_norm(),
        reason: format!("{e:?}"),
    }
}

fn check_finite(m: &OperatorMatrix) -> Result<()> {
    let n = m.dim();
    for j in 0..n {
        for i in 0..n {
            if !m.entries[(i, j)].is_finite() {
                return Err(eigen_error(m, "non-finite matrix entry"));
            }
        }
    }
    Ok(())
}

/// Full dense eigendecomposition with no structural assumption on `m`.
pub fn eigendecompose(m: &OperatorMatrix) -> Result<Eigenpairs> {
    check_finite(m)?;
    let n = m.dim();
    if n == 0 {
        return Ok(Eigenpairs {
            values: Vec::new(),
            vectors: Mat::zeros(0, 0),
        });
    }
    let evd = m.entries.eigen().map_err(|e| eigen_error(m, e))?;
    let raw: Vec<Complex64> = (0..n).map(|i| evd.S()[i]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| spectral_order(&raw[a], &raw[b]));
    let u = evd.U();
    let vectors = Mat::from_fn(n, n, |i, j| u[(i, order[j])]);
    let values = order.iter().map(|&i| raw[i]).collect();
    Ok(Eigenpairs { values, vectors })
}

/// `iM` for a skew-Hermitian `M` is Hermitian with real spectrum `μ`;
/// the eigenvalues of `M` are `−iμ`.
fn hermitian_of(m: &OperatorMatrix) -> Mat<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    Mat::from_fn(m.dim(), m.dim(), |r, c| m.entries[(r, c)] * i)
}

fn is_skew_hermitian(m: &OperatorMatrix) -> bool {
    m.skew_hermitian_defect() <= 1e-13 * m.frobenius_norm()
}

/// Eigenvalues only. Skew-Hermitian matrices go through the Hermitian
/// solver on `iM`; anything else falls back to the general solver.
pub fn eigenvalues(m: &OperatorMatrix) -> Result<Vec<Complex64>> {
    check_finite(m)?;
    if m.dim() == 0 {
        return Ok(Vec::new());
    }
    let mut values = if is_skew_hermitian(m) {
        hermitian_of(m)
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| eigen_error(m, e))?
            .into_iter()
            .map(|mu| Complex64::new(0.0, -mu))
            .collect::<Vec<_>>()
    } else {
        m.entries.eigenvalues().map_err(|e| eigen_error(m, e))?
    };
    sort_spectrum(&mut values);
    Ok(values)
}

/// Unitary eigendecomposition of a skew-Hermitian matrix.
pub fn eigendecompose_skew_hermitian(m: &OperatorMatrix) -> Result<Eigenpairs> {
    check_finite(m)?;
    if !is_skew_hermitian(m) {
        return Err(eigen_error(m, "matrix is not skew-Hermitian"));
    }
    let n = m.dim();
    let evd = hermitian_of(m)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| eigen_error(m, e))?;
    let raw: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(0.0, -evd.S()[i].re))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| spectral_order(&raw[a], &raw[b]));
    let u = evd.U();
    let vectors = Mat::from_fn(n, n, |i, j| u[(i, order[j])]);
    Ok(Eigenpairs {
        values: order.iter().map(|&i| raw[i]).collect(),
        vectors,
    })
}

impl Eigenpairs {
    pub fn vector(&self, index: usize) -> Vec<Complex64> {
        (0..self.vectors.nrows())
            .map(|i| self.vectors[(i, index)])
            .collect()
    }
}

/// `‖Mv − λv‖ / ‖v‖` for every pair.
pub fn eigen_residuals(m: &OperatorMatrix, pairs: &Eigenpairs) -> Vec<f64> {
    (0..pairs.values.len())
        .map(|j| {
            let v = pairs.vector(j);
            let mv = m.apply(&v);
            let lambda = pairs.values[j];
            let r: f64 = mv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b * lambda).norm_sqr())
                .sum();
            let nv: f64 = v.iter().map(|c| c.norm_sqr()).sum();
            (r / nv).sqrt()
        })
        .collect()
}

/// Hausdorff distance between two finite point sets in the complex plane.
pub fn hausdorff_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let directed = |from: &[Complex64], to: &[Complex64]| {
        from.iter()
            .map(|x| {
                to.iter()
                    .map(|y| (x - y).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}
