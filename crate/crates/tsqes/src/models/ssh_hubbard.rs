//! SSH chain with on-site Hubbard interaction, as a qubit operator.
//!
//! Each unit cell holds an A and a B site; with spin that is four fermionic
//! modes per cell, ordered cell-major as
//!
//!   d_{i,1} = A-up, d_{i,2} = B-up, d_{i,3} = A-down, d_{i,4} = B-down
//!   mode(i, alpha) = 4 i + (alpha - 1).
//!
//! The Hamiltonian is
//!
//!   H = - sum_i [ t1 (d'_{i,1} d_{i,2} + d'_{i,3} d_{i,4})
//!               + t2 (d'_{i,2} d_{i+1,1} + d'_{i,4} d_{i+1,3}) + h.c. ]
//!       + sum_i U (n_{i,1} n_{i,3} + n_{i,2} n_{i,4})
//!
//! on an open chain, mapped through Jordan-Wigner.

use crate::error::{Error, Result};
use crate::pauli::PauliSum;

use super::fermion::{jordan_wigner, FermionicTerm};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SSHHubbardParams {
    /// Intra-cell hopping.
    pub t1: f64,
    /// Inter-cell hopping.
    pub t2: f64,
    /// On-site interaction strength.
    pub u: f64,
    /// Number of lattice sites (A and B combined); must be even.
    pub n_sites: usize,
    /// Electron count, for sector selection downstream.
    pub n_electrons: usize,
}

impl SSHHubbardParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_sites == 0 || self.n_sites % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "n_sites must be even and positive, got {}",
                self.n_sites
            )));
        }
        if self.n_electrons > 2 * self.n_sites {
            return Err(Error::InvalidArgument(format!(
                "n_electrons {} exceeds the {} available modes",
                self.n_electrons,
                2 * self.n_sites
            )));
        }
        Ok(())
    }

    pub fn mode_count(&self) -> usize {
        2 * self.n_sites
    }

    pub fn cells(&self) -> usize {
        self.n_sites / 2
    }
}

/// The fermionic term list before encoding.
pub fn ssh_hubbard_terms(p: &SSHHubbardParams) -> Result<Vec<FermionicTerm>> {
    p.validate()?;
    let cells = p.cells();
    let mode = |cell: usize, alpha: usize| 4 * cell + (alpha - 1);
    let mut terms = Vec::new();
    let mut hop_pair = |from: usize, to: usize, t: f64| {
        terms.push(FermionicTerm::hop(-t, from, to));
        terms.push(FermionicTerm::hop(-t, to, from));
    };
    for i in 0..cells {
        hop_pair(mode(i, 1), mode(i, 2), p.t1);
        hop_pair(mode(i, 3), mode(i, 4), p.t1);
        if i + 1 < cells {
            hop_pair(mode(i, 2), mode(i + 1, 1), p.t2);
            hop_pair(mode(i, 4), mode(i + 1, 3), p.t2);
        }
    }
    for i in 0..cells {
        terms.push(FermionicTerm::density_density(p.u, mode(i, 1), mode(i, 3)));
        terms.push(FermionicTerm::density_density(p.u, mode(i, 2), mode(i, 4)));
    }
    Ok(terms)
}

pub fn build_ssh_hubbard(p: &SSHHubbardParams) -> Result<PauliSum> {
    jordan_wigner(&ssh_hubbard_terms(p)?, p.mode_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::decompose;

    #[test]
    fn dimer_limit_single_particle_energies() {
        // one cell, t2 = 0, U = 0: two decoupled dimers with levels -1, +1;
        // the 16-dim many-body spectrum is every subset sum of {-1,1,-1,1}
        let p = SSHHubbardParams {
            t1: 1.0,
            t2: 0.0,
            u: 0.0,
            n_sites: 2,
            n_electrons: 2,
        };
        let h = build_ssh_hubbard(&p).unwrap();
        let d = decompose(&h).unwrap();
        let ev = d.eigenvalues();
        assert!((ev[0] + 2.0).abs() < 1e-10, "ground {}", ev[0]);
        assert!((ev[ev.len() - 1] - 2.0).abs() < 1e-10);
        // single-particle sector: modes singly occupied
        let sector = super::super::fermion::number_sector_basis(4, 1);
        let hs = super::super::fermion::project_to_sector(&h, &sector).unwrap();
        let ev1 = hs.eigenvalues();
        let expect = [-1.0, -1.0, 1.0, 1.0];
        for (got, want) in ev1.iter().zip(expect.iter()) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn double_occupancy_costs_u() {
        // one cell, no hopping: |A-up, A-down> occupied costs exactly U
        let p = SSHHubbardParams {
            t1: 0.0,
            t2: 0.0,
            u: 3.7,
            n_sites: 2,
            n_electrons: 2,
        };
        let h = build_ssh_hubbard(&p).unwrap();
        // modes 0 (A-up) and 2 (A-down) occupied: qubits 0 and 2 set,
        // big-endian over 4 qubits: index 0b1010 = 10
        let psi = crate::state::StateVector::basis_state(16, 0b1010).unwrap();
        let e = psi.expectation(&h).unwrap();
        assert!((e - 3.7).abs() < 1e-12, "got {e}");
        // one electron per site, opposite sublattices: no U cost
        let psi = crate::state::StateVector::basis_state(16, 0b1001).unwrap();
        assert!(psi.expectation(&h).unwrap().abs() < 1e-12);
    }

    #[test]
    fn odd_site_count_is_rejected() {
        let p = SSHHubbardParams {
            t1: 1.0,
            t2: 1.0,
            u: 0.0,
            n_sites: 3,
            n_electrons: 2,
        };
        assert!(build_ssh_hubbard(&p).is_err());
    }
}
