//! Dense Hermitian matrices: the operator form for lattice-model Bloch
//! Hamiltonians, file-loaded matrices, and sector projections.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::HermitianOperator;

/// Hermiticity tolerance checked at construction.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// A dense Hermitian matrix. Construction validates max |A - A'| <= 1e-12
/// and symmetrizes the remainder away, so downstream code can rely on exact
/// conjugate symmetry.
#[derive(Debug, Clone)]
pub struct DenseHermitian {
    mat: DMatrix<Complex64>,
}

impl DenseHermitian {
    pub fn new(mat: DMatrix<Complex64>) -> Result<DenseHermitian> {
        Self::with_tolerance(mat, HERMITICITY_TOL)
    }

    pub fn with_tolerance(mat: DMatrix<Complex64>, tolerance: f64) -> Result<DenseHermitian> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::InvalidArgument(format!(
                "matrix must be square, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let residual = hermiticity_residual(&mat);
        if residual > tolerance {
            return Err(Error::NotHermitian {
                residual,
                tolerance,
            });
        }
        let sym = (&mat + mat.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(DenseHermitian { mat: sym })
    }

    pub fn dimension(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigh(&self.mat).0
    }
}

pub(crate) fn hermiticity_residual(mat: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..mat.nrows() {
        for j in 0..=i {
            let d = (mat[(i, j)] - mat[(j, i)].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

impl HermitianOperator for DenseHermitian {
    fn dimension(&self) -> usize {
        self.mat.nrows()
    }

    fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.mat.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.mat.nrows(),
                actual: v.len(),
            });
        }
        let x = nalgebra::DVector::from_column_slice(v);
        Ok((&self.mat * x).as_slice().to_vec())
    }

    /// For a dense operator the coefficient one-norm of a Pauli expansion is
    /// not available; the spectral radius max(|lo|, |hi|) stands in for it,
    /// which keeps every bound that consumes a one-norm sound.
    fn one_norm(&self) -> f64 {
        let (lo, hi) = self.spectral_interval();
        lo.abs().max(hi.abs())
    }

    fn spectral_interval(&self) -> (f64, f64) {
        let ev = self.eigenvalues();
        (ev[0], ev[ev.len() - 1])
    }

    fn to_dense(&self) -> Result<DenseHermitian> {
        Ok(self.clone())
    }
}
