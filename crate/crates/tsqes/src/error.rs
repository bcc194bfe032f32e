//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: operator dimension {expected}, vector length {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("pauli string has {actual} letters, expected {expected}")]
    StringLength { expected: usize, actual: usize },

    #[error("coefficient must be a finite real number, got {0}")]
    NonFiniteCoefficient(f64),

    #[error("dense path is capped at {cap} qubits ({dim} amplitudes), requested dimension {requested}")]
    DenseCapExceeded {
        cap: usize,
        dim: usize,
        requested: usize,
    },

    #[error("operator is not Hermitian: max |A - A'| = {residual:.3e} exceeds {tolerance:.1e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("state norm underflow: the state is orthogonal to the surviving subspace")]
    InterferenceUnderflow,

    #[error("time constraint violated: |t| * max|E - e_s| = {arg:.6} > pi/2")]
    TimeConstraint { arg: f64 },

    #[error("contraction ratio is degenerate: |lambda_s| = |lambda_t| = {lambda:.6}, bound is unbounded")]
    DegenerateRatio { lambda: f64 },

    #[error("denominator estimate {value:.4e} is within 3 standard errors ({stderr:.4e}) of zero")]
    UnstableRatio { value: f64, stderr: f64 },

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("fermionic mode index {index} out of range for {modes} modes")]
    ModeOutOfRange { index: usize, modes: usize },

    #[error("observable has no terms after canonicalization")]
    ZeroObservable,

    #[error("fermionic terms are not Hermitian-closed: residual imaginary weight {residual:.3e}")]
    NonHermitianTerms { residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
