//! Synthetic operators with a prescribed spectrum: H = V diag(E) V' for a
//! seeded Haar-ish random unitary V. Stand-in for molecular Hamiltonians
//! whose coefficient tables are ingested elsewhere or not needed: the
//! solver's behavior depends only on the spectrum and the overlaps, both of
//! which this makes controllable.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dense::DenseHermitian;
use crate::error::Result;

/// Deterministic in `seed`: the same seed yields a bit-identical matrix.
pub fn synth_spectrum(eigenvalues: &[f64], seed: u64) -> Result<DenseHermitian> {
    if eigenvalues.is_empty() {
        return Err(crate::error::Error::InvalidArgument(
            "spectrum must be nonempty".into(),
        ));
    }
    for &e in eigenvalues {
        if !e.is_finite() {
            return Err(crate::error::Error::NonFiniteCoefficient(e));
        }
    }
    let n = eigenvalues.len();
    let v = haar_unitary(n, seed);
    let diag = DMatrix::from_diagonal(&DVector::from_iterator(
        n,
        eigenvalues.iter().map(|&e| Complex64::new(e, 0.0)),
    ));
    let h = &v * diag * v.adjoint();
    DenseHermitian::new(h)
}

/// QR of a complex Gaussian matrix with the R-diagonal phases absorbed into
/// Q, which makes the distribution Haar and the output unique.
fn haar_unitary(n: usize, seed: u64) -> DMatrix<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let g = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng))
    });
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let rjj = r[(j, j)];
        let mag = rjj.norm();
        let phase = if mag > 0.0 {
            rjj / mag
        } else {
            Complex64::new(1.0, 0.0)
        };
        // multiply column j by conj(phase) so R's diagonal is positive real
        let correction = phase.conj();
        for i in 0..n {
            q[(i, j)] *= correction;
        }
    }
    q
}
