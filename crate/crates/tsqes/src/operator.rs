//! The operator abstraction every downstream module consumes.

use num_complex::Complex64;

use crate::dense::DenseHermitian;
use crate::error::Result;

/// A Hermitian operator: a linear action on complex vectors plus the two
/// scalar summaries the solver and the estimators need (a one-norm and an
/// interval containing the spectrum).
pub trait HermitianOperator: Send + Sync {
    fn dimension(&self) -> usize;

    /// H · v.
    fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>>;

    /// Σ |c_k| for Pauli sums; a sound stand-in for dense operators.
    fn one_norm(&self) -> f64;

    /// An interval [lo, hi] containing every eigenvalue.
    fn spectral_interval(&self) -> (f64, f64);

    /// Materialize as a dense matrix (subject to the dense cap).
    fn to_dense(&self) -> Result<DenseHermitian>;
}
