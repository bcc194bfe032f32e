//! Complex statevectors with log-norm bookkeeping.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;

/// Unit norm tolerance maintained after every renormalizing operation.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// A quantum state. `amplitudes` are kept unit-normalized; `log_norm`
/// accumulates the natural log of the true norm relative to the stored
/// amplitudes, so repeated contraction never underflows the vector itself.
#[derive(Debug, Clone)]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
    log_norm: f64,
}

impl StateVector {
    /// Normalize the given amplitudes; the stored state starts with
    /// log_norm = 0 regardless of the input scale.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<StateVector> {
        let v = DVector::from_vec(amplitudes);
        let norm = v.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidArgument(
                "state amplitudes must have a finite nonzero norm".into(),
            ));
        }
        Ok(StateVector {
            amplitudes: v / Complex64::new(norm, 0.0),
            log_norm: 0.0,
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<StateVector> {
        StateVector::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// |index> in a space of the given dimension.
    pub fn basis_state(dimension: usize, index: usize) -> Result<StateVector> {
        if index >= dimension {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for dimension {dimension}"
            )));
        }
        let mut v = vec![Complex64::new(0.0, 0.0); dimension];
        v[index] = Complex64::new(1.0, 0.0);
        StateVector::new(v)
    }

    /// The uniform superposition |+>^n over all computational basis states.
    pub fn uniform_plus(dimension: usize) -> Result<StateVector> {
        StateVector::new(vec![Complex64::new(1.0, 0.0); dimension])
    }

    pub(crate) fn from_normalized(amplitudes: DVector<Complex64>, log_norm: f64) -> StateVector {
        debug_assert!((amplitudes.norm() - 1.0).abs() <= UNIT_NORM_TOL);
        StateVector {
            amplitudes,
            log_norm,
        }
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    pub(crate) fn vector(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }

    /// <self|other>.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: other.dimension(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// |<self|other>|, insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// Re <psi|H|psi> on the unit-normalized amplitudes. The imaginary part
    /// must vanish for a Hermitian operator; a residual above 1e-10 means the
    /// operator broke its contract, which is asserted here.
    pub fn expectation(&self, op: &dyn HermitianOperator) -> Result<f64> {
        if op.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: op.dimension(),
                actual: self.dimension(),
            });
        }
        let hv = op.apply(self.amplitudes.as_slice())?;
        let val = self
            .amplitudes
            .iter()
            .zip(hv.iter())
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>();
        assert!(
            val.im.abs() <= 1e-10,
            "expectation of a Hermitian operator must be real, got imaginary residual {:.3e}",
            val.im
        );
        Ok(val.re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliSum;

    #[test]
    fn z_expectation_on_zero_ket() {
        let z = PauliSum::parse_terms(1, &[(1.0, "Z")]).unwrap();
        let psi = StateVector::basis_state(2, 0).unwrap();
        assert_eq!(psi.expectation(&z).unwrap(), 1.0);
    }

    #[test]
    fn normalization_at_construction() {
        let psi = StateVector::from_real(&[3.0, 4.0]).unwrap();
        assert!((psi.amplitudes()[0].re - 0.6).abs() < 1e-15);
        assert!((psi.amplitudes()[1].re - 0.8).abs() < 1e-15);
        assert_eq!(psi.log_norm(), 0.0);
    }

    #[test]
    fn zero_vector_is_rejected() {
        assert!(StateVector::from_real(&[0.0, 0.0]).is_err());
    }
}
