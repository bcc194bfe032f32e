//! Time-symmetric quantum eigensolver workbench.
//!
//! Interfering a forward and a backward time evolution, both shifted by an
//! energy e_s, filters an initial state onto the eigenstate whose eigenvalue
//! is nearest to (cosine branch) or farthest from (sine branch) the shift.
//! This crate realizes that mechanism two ways at desk scale:
//!
//! * an exact statevector iteration driven by a cached eigendecomposition
//!   ([`solver`]), including the iteration-free multi-ancilla variant, and
//! * a Monte-Carlo estimator built from Hadamard-test expectation values
//!   ([`qmc`]), with Hoeffding sample budgeting.
//!
//! Model builders ([`models`]) cover synthetic-spectrum molecular stand-ins,
//! a Kane-Mele zigzag ribbon, the SSH chain with Hubbard interaction under
//! Jordan-Wigner, and file ingestion for externally supplied operators.

pub mod dense;
pub mod error;
pub mod io;
mod linalg;
pub mod models;
pub mod operator;
pub mod pauli;
pub mod qmc;
pub mod solver;
pub mod spectral;
pub mod state;

pub use dense::DenseHermitian;
pub use error::{Error, Result};
pub use operator::HermitianOperator;
pub use pauli::{Pauli, PauliString, PauliSum, PauliTerm, DEFAULT_DENSE_CAP};
pub use spectral::{
    decompose, decompose_with_cap, AmplificationFactors, Direction, SpectralDecomposition,
    Subspace,
};
pub use state::StateVector;
