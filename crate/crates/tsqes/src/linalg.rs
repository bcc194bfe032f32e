//! Hermitian eigendecomposition, sorted ascending.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Eigenvalues (ascending) and the matching eigenvector columns of a
/// Hermitian matrix. The input is assumed Hermitian; callers validate.
pub(crate) fn eigh(mat: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let se = mat.clone().symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        se.eigenvalues[a]
            .partial_cmp(&se.eigenvalues[b])
            .expect("eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = DMatrix::<Complex64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Max-abs entry of (V diag(e) V' - A), for validation.
pub(crate) fn reconstruction_residual(
    mat: &DMatrix<Complex64>,
    values: &[f64],
    vectors: &DMatrix<Complex64>,
) -> f64 {
    let diag = DVector::from_iterator(values.len(), values.iter().map(|&e| Complex64::new(e, 0.0)));
    let rebuilt = vectors * DMatrix::from_diagonal(&diag) * vectors.adjoint();
    (rebuilt - mat)
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
}
