//! Dense complex linear algebra used throughout the crate.
//!
//! Everything is a thin layer over `nalgebra`: Hermitian eigendecompositions,
//! SVDs, norms and null spaces of exact-shape dense matrices. Singular values
//! and eigenvalues are always returned sorted.

use nalgebra::{Cholesky, DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix; the carrier of every operator in the crate.
pub type ComplexMatrix = DMatrix<Complex64>;

/// Dense complex column vector.
pub type ComplexVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Builds a matrix from real row-major data.
pub fn from_real_rows(rows: usize, cols: usize, data: &[f64]) -> ComplexMatrix {
    assert_eq!(data.len(), rows * cols, "row-major data has wrong length");
    ComplexMatrix::from_fn(rows, cols, |i, j| real(data[i * cols + j]))
}

/// Real diagonal matrix.
pub fn diag(values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    ComplexMatrix::from_fn(n, n, |i, j| if i == j { real(values[i]) } else { ZERO })
}

pub fn check_finite(m: &ComplexMatrix) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Frobenius norm `(tr A^*A)^{1/2}`.
#[inline]
pub fn frobenius(m: &ComplexMatrix) -> f64 {
    m.norm()
}

/// Frobenius distance between two equally shaped matrices.
pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).norm()
}

/// `(A + A^*) / 2`.
pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Singular values in decreasing order.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Operator (spectral) norm, the largest singular value.
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Smallest singular value of a matrix, counting `min(rows, cols)` values.
pub fn smallest_singular_value(m: &ComplexMatrix) -> f64 {
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// Eigenvalues (ascending) and matching orthonormal eigenvectors of the
/// Hermitian part of `m`.
pub fn hermitian_eigen(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let h = hermitian_part(m);
    let n = h.nrows();
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Eigenvalues (ascending) of the Hermitian part of `m`.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = hermitian_part(m).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Inverse of a Hermitian positive definite matrix, symmetrized on return.
pub fn inverse_hpd(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let chol = Cholesky::new(hermitian_part(m))?;
    Some(hermitian_part(&chol.inverse()))
}

/// General square inverse via LU.
pub fn inverse(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    m.clone().try_inverse()
}

/// Orthonormal basis (as columns) of `ker m`, using singular values below
/// `tolerance * max(1, sigma_max)` as zero.
pub fn null_space(m: &ComplexMatrix, tolerance: f64) -> ComplexMatrix {
    let (rows, cols) = m.shape();
    // Pad to square so the SVD delivers a full set of right singular vectors.
    let n = rows.max(cols);
    let mut padded = ComplexMatrix::zeros(n, cols);
    padded.view_mut((0, 0), (rows, cols)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let threshold = tolerance * sigma_max.max(1.0);
    let kept: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= threshold)
        .collect();
    let mut basis = ComplexMatrix::zeros(cols, kept.len());
    for (dst, &i) in kept.iter().enumerate() {
        let row = v_t.row(i).adjoint();
        basis.set_column(dst, &row);
    }
    basis
}

/// Vertical concatenation of equally wide blocks.
pub fn vstack(blocks: &[ComplexMatrix]) -> ComplexMatrix {
    let cols = blocks.first().map_or(0, |b| b.ncols());
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = ComplexMatrix::zeros(rows, cols);
    let mut offset = 0;
    for b in blocks {
        out.view_mut((offset, 0), (b.nrows(), cols)).copy_from(b);
        offset += b.nrows();
    }
    out
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `tr(A)`.
pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.trace()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_wide_matrix() {
        // (x1, x2, x3, x4) -> (x3, (x2 - x4)/sqrt 2) has kernel span{e1, e2 + e4}
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = from_real_rows(2, 4, &[0.0, 0.0, 1.0, 0.0, 0.0, h, 0.0, -h]);
        let n = null_space(&m, 1e-9);
        assert_eq!(n.ncols(), 2);
        assert!((&m * &n).norm() < 1e-12);
        assert!((n.adjoint() * &n - identity(2)).norm() < 1e-12);
    }

    #[test]
    fn hermitian_eigen_sorted_and_reconstructs() {
        let m = diag(&[3.0, 1.0, 2.0]);
        let (vals, vecs) = hermitian_eigen(&m);
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
        let back = &vecs * diag(&vals) * vecs.adjoint();
        assert!((back - m).norm() < 1e-12);
    }

    #[test]
    fn hpd_inverse() {
        let m = diag(&[1.0, 1.0, 2.0]);
        let inv = inverse_hpd(&m).unwrap();
        assert!((inv - diag(&[1.0, 1.0, 0.5])).norm() < 1e-15);
        assert!(inverse_hpd(&diag(&[1.0, 0.0])).is_none());
    }

    #[test]
    fn norms() {
        let m = diag(&[3.0, -4.0]);
        assert!((frobenius(&m) - 5.0).abs() < 1e-15);
        assert!((spectral_norm(&m) - 4.0).abs() < 1e-14);
        assert!((smallest_singular_value(&m) - 3.0).abs() < 1e-14);
    }
}
