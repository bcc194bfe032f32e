//! Exact evolution kernels built from a cached spectral decomposition.
//!
//! With H = V diag(E) V', the shifted evolution operators
//!
//!   U_f = exp(-i (H - e_s) t),   U_b = exp(+i (H - e_s) t)
//!
//! act diagonally in the eigenbasis, and the interference combinations
//! (U_f + U_b)/2 and (U_f - U_b)/2 reduce to the real multipliers
//! cos((E_i - e_s) t) and sin((E_i - e_s) t) (the latter up to a global
//! phase of -i per application, which is discarded: energies and overlaps
//! are insensitive to it, so state comparisons are up to global phase).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;
use crate::pauli::DEFAULT_DENSE_CAP;
use crate::state::StateVector;
use crate::{dense, linalg};

/// Norm below which an interference step is reported as total destructive
/// interference. Sits at the double-precision denormal boundary.
pub const UNDERFLOW_NORM: f64 = 1e-300;

/// Residual above which decompose refuses a nominally Hermitian input.
pub const DECOMPOSE_HERMITICITY_TOL: f64 = 1e-8;

/// Which of the two shifted evolution operators to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Ancilla post-selection branch: 0 keeps the cosine multiplier (amplifies
/// the eigenvalue nearest the shift), 1 keeps the sine multiplier (farthest,
/// within the time constraint).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subspace {
    Zero,
    One,
}

impl Subspace {
    pub fn from_index(i: u8) -> Result<Subspace> {
        match i {
            0 => Ok(Subspace::Zero),
            1 => Ok(Subspace::One),
            _ => Err(Error::InvalidArgument(format!(
                "subspace must be 0 or 1, got {i}"
            ))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Subspace::Zero => 0,
            Subspace::One => 1,
        }
    }

    /// The real eigenbasis multiplier of one interference step.
    pub fn multiplier(self, theta: f64) -> f64 {
        match self {
            Subspace::Zero => theta.cos(),
            Subspace::One => theta.sin(),
        }
    }
}

/// The per-eigenvalue amplification factors of one raw interference step:
/// lambda_{i0} = 2 cos((E_i - e_s) t), lambda_{i1} = 2 sin((E_i - e_s) t).
/// Phases are tracked separately; |lambda| <= 2 always.
#[derive(Debug, Clone)]
pub struct AmplificationFactors {
    lambda_cos: Vec<f64>,
    lambda_sin: Vec<f64>,
}

impl AmplificationFactors {
    pub fn lambda(&self, subspace: Subspace) -> &[f64] {
        match subspace {
            Subspace::Zero => &self.lambda_cos,
            Subspace::One => &self.lambda_sin,
        }
    }
}

/// Cached eigenvalues (ascending) and eigenvector columns of a Hermitian
/// operator; immutable and shareable across sweep workers.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

/// Full eigendecomposition of `op`, with the dense matrix capped at
/// `2^DEFAULT_DENSE_CAP` amplitudes.
pub fn decompose(op: &dyn HermitianOperator) -> Result<SpectralDecomposition> {
    decompose_with_cap(op, DEFAULT_DENSE_CAP)
}

pub fn decompose_with_cap(
    op: &dyn HermitianOperator,
    cap: usize,
) -> Result<SpectralDecomposition> {
    let dim = op.dimension();
    if dim > (1usize << cap) {
        return Err(Error::DenseCapExceeded {
            cap,
            dim: 1usize << cap,
            requested: dim,
        });
    }
    let dense = op.to_dense()?;
    SpectralDecomposition::from_matrix(dense.matrix())
}

impl SpectralDecomposition {
    pub fn from_matrix(mat: &DMatrix<Complex64>) -> Result<SpectralDecomposition> {
        let residual = dense::hermiticity_residual(mat);
        if residual > DECOMPOSE_HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                residual,
                tolerance: DECOMPOSE_HERMITICITY_TOL,
            });
        }
        let sym = (mat + mat.adjoint()) * Complex64::new(0.5, 0.0);
        let (eigenvalues, eigenvectors) = linalg::eigh(&sym);
        Ok(SpectralDecomposition {
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    /// The i-th eigenstate as a statevector.
    pub fn eigenstate(&self, i: usize) -> Result<StateVector> {
        if i >= self.dimension() {
            return Err(Error::InvalidArgument(format!(
                "eigenstate index {i} out of range for dimension {}",
                self.dimension()
            )));
        }
        StateVector::new(self.eigenvectors.column(i).iter().copied().collect())
    }

    /// (lowest, highest) eigenvalue.
    pub fn eigenvalue_interval(&self) -> (f64, f64) {
        (
            self.eigenvalues[0],
            self.eigenvalues[self.eigenvalues.len() - 1],
        )
    }

    /// V' a: coefficients of `state` in the eigenbasis.
    pub fn to_eigenbasis(&self, state: &StateVector) -> Result<DVector<Complex64>> {
        if state.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: state.dimension(),
            });
        }
        Ok(self.eigenvectors.adjoint() * state.vector())
    }

    /// V c: back to the computational basis, preserving the log-norm given.
    pub fn from_eigenbasis(&self, coeffs: &DVector<Complex64>, log_norm: f64) -> StateVector {
        let v = &self.eigenvectors * coeffs;
        StateVector::from_normalized(v, log_norm)
    }

    /// exp(∓ i (H - e_s) t) applied exactly; norm and log_norm are unchanged.
    pub fn evolve(
        &self,
        state: &StateVector,
        e_s: f64,
        t: f64,
        direction: Direction,
    ) -> Result<StateVector> {
        let mut c = self.to_eigenbasis(state)?;
        let sign = match direction {
            Direction::Forward => -1.0,
            Direction::Backward => 1.0,
        };
        for (i, ci) in c.iter_mut().enumerate() {
            let theta = (self.eigenvalues[i] - e_s) * t;
            *ci *= Complex64::from_polar(1.0, sign * theta);
        }
        Ok(self.from_eigenbasis(&c, state.log_norm()))
    }

    /// One interference step: multiply each eigencomponent by
    /// cos((E_i - e_s) t) (subspace 0) or sin((E_i - e_s) t) (subspace 1),
    /// renormalize, and fold the contraction into log_norm.
    pub fn interference_step(
        &self,
        state: &StateVector,
        e_s: f64,
        t: f64,
        subspace: Subspace,
    ) -> Result<StateVector> {
        let mut c = self.to_eigenbasis(state)?;
        for (i, ci) in c.iter_mut().enumerate() {
            let theta = (self.eigenvalues[i] - e_s) * t;
            *ci *= Complex64::new(subspace.multiplier(theta), 0.0);
        }
        let norm = c.norm();
        if !(norm > UNDERFLOW_NORM) {
            return Err(Error::InterferenceUnderflow);
        }
        c /= Complex64::new(norm, 0.0);
        Ok(self.from_eigenbasis(&c, state.log_norm() + norm.ln()))
    }

    /// lambda_{i0} = 2 cos((E_i - e_s) t), lambda_{i1} = 2 sin(...).
    pub fn amplification_factors(&self, e_s: f64, t: f64) -> AmplificationFactors {
        let thetas: Vec<f64> = self.eigenvalues.iter().map(|&e| (e - e_s) * t).collect();
        AmplificationFactors {
            lambda_cos: thetas.iter().map(|th| 2.0 * th.cos()).collect(),
            lambda_sin: thetas.iter().map(|th| 2.0 * th.sin()).collect(),
        }
    }

    /// Max-abs residual of V diag(E) V' against `mat`.
    pub fn reconstruction_residual(&self, mat: &DMatrix<Complex64>) -> f64 {
        linalg::reconstruction_residual(mat, &self.eigenvalues, &self.eigenvectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliSum;

    fn diag(entries: &[f64]) -> DMatrix<Complex64> {
        DMatrix::from_diagonal(&DVector::from_iterator(
            entries.len(),
            entries.iter().map(|&x| Complex64::new(x, 0.0)),
        ))
    }

    #[test]
    fn decompose_sorts_ascending() {
        let d = SpectralDecomposition::from_matrix(&diag(&[3.0, 1.0])).unwrap();
        assert_eq!(d.eigenvalues(), &[1.0, 3.0]);
        // permuted identity eigenvectors
        assert!((d.eigenvectors()[(1, 0)].norm() - 1.0).abs() < 1e-12);
        assert!((d.eigenvectors()[(0, 1)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decompose_rejects_non_hermitian() {
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            SpectralDecomposition::from_matrix(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn evolve_at_zero_time_is_identity() {
        let z = PauliSum::parse_terms(2, &[(1.0, "ZI"), (0.5, "IX")]).unwrap();
        let d = decompose(&z).unwrap();
        let psi = StateVector::from_real(&[0.5, 0.5, 0.5, 0.5]).unwrap();
        let out = d.evolve(&psi, 0.3, 0.0, Direction::Forward).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(out.amplitudes()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn backward_undoes_forward() {
        let h = PauliSum::parse_terms(2, &[(0.7, "ZZ"), (0.2, "XI"), (-0.4, "IY")]).unwrap();
        let d = decompose(&h).unwrap();
        let psi = StateVector::from_real(&[1.0, 2.0, -1.0, 0.5]).unwrap();
        let fwd = d.evolve(&psi, -0.3, 1.7, Direction::Forward).unwrap();
        let back = d.evolve(&fwd, -0.3, 1.7, Direction::Backward).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(back.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn interference_fixed_points() {
        // cos(0) = 1: an eigenstate with E = e_s is untouched in subspace 0.
        let d = SpectralDecomposition::from_matrix(&diag(&[0.5, 2.0])).unwrap();
        let psi = StateVector::basis_state(2, 0).unwrap();
        let out = d.interference_step(&psi, 0.5, 0.9, Subspace::Zero).unwrap();
        assert!(out.fidelity(&psi).unwrap() > 1.0 - 1e-12);
        assert!(out.log_norm().abs() < 1e-12);

        // sin(pi/2) = 1: an eigenstate with (E - e_s) t = pi/2 is untouched
        // in subspace 1.
        let t = std::f64::consts::FRAC_PI_2 / 1.5;
        let out = d
            .interference_step(&psi, -1.0, t, Subspace::One)
            .unwrap();
        assert!(out.fidelity(&psi).unwrap() > 1.0 - 1e-12);
        assert!(out.log_norm().abs() < 1e-12);
    }

    #[test]
    fn underflow_is_detected() {
        // an eigenstate with E = e_s is annihilated by the sine branch:
        // total destructive interference, not a silent zero state
        let d = SpectralDecomposition::from_matrix(&diag(&[1.0, 3.0])).unwrap();
        let psi = StateVector::basis_state(2, 0).unwrap();
        let err = d.interference_step(&psi, 1.0, 0.8, Subspace::One);
        assert!(matches!(err, Err(Error::InterferenceUnderflow)));
    }

    #[test]
    fn amplification_factor_extremes() {
        let d = SpectralDecomposition::from_matrix(&diag(&[1.0])).unwrap();
        let f = d.amplification_factors(1.0, 0.8); // theta = 0
        assert!((f.lambda(Subspace::Zero)[0] - 2.0).abs() < 1e-15);
        assert!(f.lambda(Subspace::One)[0].abs() < 1e-15);

        let t = std::f64::consts::FRAC_PI_2;
        let f = d.amplification_factors(0.0, t); // theta = pi/2
        assert!(f.lambda(Subspace::Zero)[0].abs() < 1e-12);
        assert!((f.lambda(Subspace::One)[0] - 2.0).abs() < 1e-12);
    }
}
