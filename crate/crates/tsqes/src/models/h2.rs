//! Two-qubit hydrogen-molecule Hamiltonian in the six-coefficient form
//!
//!   H = a0 II + a1 ZI + a2 IZ + a3 ZZ + a4 XX + a5 YY.
//!
//! The published coefficient tables are not reproduced here; instead
//! [`H2Coefficients::fit_spectrum`] solves the inverse problem exactly for a
//! target four-level spectrum. H block-diagonalizes over {|00>, |11>} and
//! {|01>, |10>}, each block a real symmetric 2x2, so a spectrum plus two
//! mixing angles (one per block) pins all six coefficients.

use crate::error::Result;
use crate::pauli::{PauliSum, PauliTerm, PauliString};

/// Four eigenenergies of the reference hydrogen instance at inter-nuclear
/// distance R = 1.25 Angstrom.
pub const H2_R125_SPECTRUM: [f64; 4] = [-1.0458, -0.8428, -0.4166, -0.1878];

/// The six real coefficients (a0..a5) at a given inter-nuclear distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H2Coefficients {
    pub alpha: [f64; 6],
}

impl H2Coefficients {
    pub fn new(alpha: [f64; 6]) -> Result<H2Coefficients> {
        for &a in &alpha {
            if !a.is_finite() {
                return Err(crate::error::Error::NonFiniteCoefficient(a));
            }
        }
        Ok(H2Coefficients { alpha })
    }

    /// Solve the inverse problem: coefficients whose spectrum is exactly
    /// `spectrum` (ascending). The outer pair {E1, E4} is assigned to the
    /// {|00>, |11>} block and the inner pair {E2, E3} to {|01>, |10>};
    /// `theta_outer` / `theta_inner` set how each block splits its level
    /// separation between the diagonal and the off-diagonal coupling
    /// (theta = 0 gives uncoupled, diagonal blocks).
    pub fn fit_spectrum(
        spectrum: [f64; 4],
        theta_outer: f64,
        theta_inner: f64,
    ) -> Result<H2Coefficients> {
        let [e1, e2, e3, e4] = spectrum;
        let c_outer = 0.5 * (e1 + e4);
        let r_outer = 0.5 * (e4 - e1);
        let c_inner = 0.5 * (e2 + e3);
        let r_inner = 0.5 * (e3 - e2);

        let d_outer = r_outer * theta_outer.cos();
        let g_outer = r_outer * theta_outer.sin();
        let d_inner = r_inner * theta_inner.cos();
        let g_inner = r_inner * theta_inner.sin();

        H2Coefficients::new([
            0.5 * (c_outer + c_inner),
            0.5 * (d_outer + d_inner),
            0.5 * (d_outer - d_inner),
            0.5 * (c_outer - c_inner),
            0.5 * (g_inner + g_outer),
            0.5 * (g_inner - g_outer),
        ])
    }

    /// The canonical synthetic instance: spectrum [`H2_R125_SPECTRUM`] with
    /// frozen mixing angles, so every eigenvector has a generic overlap with
    /// the computational basis.
    pub fn synthetic_r125() -> H2Coefficients {
        H2Coefficients::fit_spectrum(H2_R125_SPECTRUM, 0.6, 0.8)
            .expect("reference fit is finite")
    }
}

/// a0 II + a1 ZI + a2 IZ + a3 ZZ + a4 XX + a5 YY.
pub fn build_h2(c: &H2Coefficients) -> PauliSum {
    let strings = ["II", "ZI", "IZ", "ZZ", "XX", "YY"];
    let terms = c
        .alpha
        .iter()
        .zip(strings.iter())
        .map(|(&a, s)| PauliTerm::new(a, PauliString::parse(s).unwrap()).unwrap())
        .collect();
    PauliSum::from_terms(2, terms).expect("fixed 2-qubit strings")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::decompose;

    #[test]
    fn zero_coefficients_give_zero_operator() {
        let h = build_h2(&H2Coefficients::new([0.0; 6]).unwrap());
        assert!(h.is_zero());
    }

    #[test]
    fn identity_only_is_flat_spectrum() {
        let h = build_h2(&H2Coefficients::new([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap());
        let d = decompose(&h).unwrap();
        for &e in d.eigenvalues() {
            assert!((e - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fit_reproduces_reference_spectrum() {
        let h = build_h2(&H2Coefficients::synthetic_r125());
        let d = decompose(&h).unwrap();
        for (&got, &want) in d.eigenvalues().iter().zip(H2_R125_SPECTRUM.iter()) {
            assert!((got - want).abs() < 1e-10, "got {got}, want {want}");
        }
    }

    #[test]
    fn fit_is_generic_in_the_computational_basis() {
        // every eigenvector keeps nonzero overlap with |00>+2|01>+|10>+|11>
        let h = build_h2(&H2Coefficients::synthetic_r125());
        let d = decompose(&h).unwrap();
        let psi = crate::state::StateVector::from_real(&[1.0, 2.0, 1.0, 1.0]).unwrap();
        for i in 0..4 {
            let a = d.eigenstate(i).unwrap().inner(&psi).unwrap().norm();
            assert!(a > 0.04, "eigenstate {i} overlap {a} too small");
        }
    }
}
