//! Shared test oracles. Everything here checks the library through an
//! independent computational route: Kronecker-product matrix assembly,
//! Taylor-series matrix exponentials, direct fermionic Fock-space action,
//! and a literal multi-ancilla circuit simulation.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use tsqes::{Pauli, PauliString, PauliSum, PauliTerm, StateVector};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense matrix of a Pauli sum by explicit Kronecker products of 2x2
/// letter matrices; no shared code with the index/phase kernel.
pub fn kron_dense(sum: &PauliSum) -> DMatrix<Complex64> {
    let dim = 1usize << sum.qubit_count();
    let mut total = DMatrix::<Complex64>::zeros(dim, dim);
    for term in sum.terms() {
        let mut acc = DMatrix::<Complex64>::from_element(1, 1, c(1.0, 0.0));
        for letter in term.string().letters() {
            acc = kron(&acc, &pauli_matrix(letter));
        }
        total += acc * c(term.coefficient(), 0.0);
    }
    total
}

pub fn pauli_matrix(p: Pauli) -> DMatrix<Complex64> {
    let m = p.matrix();
    DMatrix::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]])
}

pub fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ac) = (a.nrows(), a.ncols());
    let (br, bc) = (b.nrows(), b.ncols());
    let mut out = DMatrix::<Complex64>::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// exp(A) by scaling-and-squaring with a plain Taylor series.
pub fn taylor_expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let norm = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * c(0.5f64.powi(s), 0.0);
    let mut result = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for j in 1..=24 {
        term = (&term * &scaled) / c(j as f64, 0.0);
        result += &term;
    }
    for _ in 0..s {
        result = &result * &result;
    }
    result
}

pub fn random_pauli_sum(rng: &mut impl Rng, qubits: usize, terms: usize) -> PauliSum {
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let string: Vec<Pauli> = (0..qubits)
            .map(|_| letters[rng.random_range(0..4)])
            .collect();
        let coeff = rng.random_range(-1.0..1.0);
        out.push(PauliTerm::new(coeff, PauliString::from_letters(&string).unwrap()).unwrap());
    }
    PauliSum::from_terms(qubits, out).unwrap()
}

pub fn random_state(rng: &mut impl Rng, dim: usize) -> StateVector {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector::new(v).unwrap()
}

pub fn random_complex_vector(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    (0..dim)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

pub fn matvec(m: &DMatrix<Complex64>, v: &[Complex64]) -> Vec<Complex64> {
    (m * DVector::from_column_slice(v)).as_slice().to_vec()
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// All 2^m subset sums of single-particle energies: the many-body spectrum
/// of a free-fermion Hamiltonian, sorted ascending.
pub fn free_fermion_spectrum(single_particle: &DMatrix<f64>) -> Vec<f64> {
    let m = single_particle.nrows();
    let sym = nalgebra::SymmetricEigen::new(single_particle.clone());
    let eps: Vec<f64> = sym.eigenvalues.iter().copied().collect();
    let mut out = Vec::with_capacity(1 << m);
    for subset in 0..(1usize << m) {
        let mut e = 0.0;
        for (j, &val) in eps.iter().enumerate() {
            if subset & (1 << j) != 0 {
                e += val;
            }
        }
        out.push(e);
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// Direct fermionic action on Fock bitstrings (mode j = bit j, occupied =
/// set), with the sign from the number of occupied modes below j. No shared
/// code with the Jordan-Wigner path.
pub mod fock {
    use super::*;
    use tsqes::models::FermionicTerm;

    /// apply a'_j or a_j to |state>; None when annihilated.
    fn ladder(state: usize, mode: usize, dagger: bool) -> Option<(usize, f64)> {
        let occupied = state & (1 << mode) != 0;
        if dagger == occupied {
            return None;
        }
        let below = (state & ((1usize << mode) - 1)).count_ones();
        let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
        Some((state ^ (1 << mode), sign))
    }

    /// <out| term |in> accumulated over an operator product (rightmost op
    /// acts first).
    fn apply_term(term: &FermionicTerm, state: usize) -> Option<(usize, f64)> {
        let mut s = state;
        let mut sign = 1.0;
        for &(mode, dagger) in term.ops.iter().rev() {
            let (next, sg) = ladder(s, mode, dagger)?;
            s = next;
            sign *= sg;
        }
        Some((s, sign * term.coefficient))
    }

    /// Dense Hamiltonian on an explicit list of Fock states.
    pub fn build_sector_matrix(
        terms: &[FermionicTerm],
        basis: &[usize],
    ) -> DMatrix<f64> {
        let n = basis.len();
        let index: std::collections::HashMap<usize, usize> =
            basis.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut mat = DMatrix::<f64>::zeros(n, n);
        for (col, &s) in basis.iter().enumerate() {
            for term in terms {
                if let Some((target, amp)) = apply_term(term, s) {
                    if let Some(&row) = index.get(&target) {
                        mat[(row, col)] += amp;
                    }
                }
            }
        }
        mat
    }

    /// Sector spectrum by direct diagonalization, ascending.
    pub fn sector_spectrum(terms: &[FermionicTerm], basis: &[usize]) -> Vec<f64> {
        let mat = build_sector_matrix(terms, basis);
        let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(mat)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }
}

/// Literal simulation of the k-ancilla iteration-free circuit on the full
/// (n + k)-qubit register: Hadamards, ancilla-controlled backward
/// evolutions exp(i (H - e_s) 2t), the uncontrolled forward evolution
/// exp(-i (H - e_s) k t), Hadamards, projective ancilla readout. The
/// evolution operators come from the Taylor exponential, not from any
/// eigendecomposition.
pub mod circuit {
    use super::*;

    pub struct PostSelected {
        pub state0: Vec<Complex64>,
        pub p0: f64,
        pub state1: Vec<Complex64>,
        pub p1: f64,
    }

    pub fn iteration_free(
        h_dense: &DMatrix<Complex64>,
        psi0: &[Complex64],
        e_s: f64,
        t: f64,
        k: usize,
    ) -> PostSelected {
        let n_dim = h_dense.nrows();
        let total_dim = n_dim << k;
        let shifted = h_dense - DMatrix::<Complex64>::identity(n_dim, n_dim) * c(e_s, 0.0);
        let u_2t = taylor_expm(&(&shifted * c(0.0, 2.0 * t)));
        let u_fwd_k = taylor_expm(&(&shifted * c(0.0, -(k as f64) * t)));

        // |0..0>|psi0>, ancilla bits above the work register
        let mut state = vec![c(0.0, 0.0); total_dim];
        state[..n_dim].copy_from_slice(psi0);

        for a in 0..k {
            hadamard_on(&mut state, n_dim, a);
        }
        for a in 0..k {
            controlled_unitary(&mut state, n_dim, a, &u_2t);
        }
        apply_on_work(&mut state, n_dim, &u_fwd_k);
        for a in 0..k {
            hadamard_on(&mut state, n_dim, a);
        }

        let extract = |pattern: usize| -> (Vec<Complex64>, f64) {
            let base = pattern * n_dim;
            let block: Vec<Complex64> = state[base..base + n_dim].to_vec();
            let p = block.iter().map(|x| x.norm_sqr()).sum::<f64>();
            (block, p)
        };
        let (raw0, p0) = extract(0);
        let (raw1, p1) = extract((1 << k) - 1);
        let normalize = |v: Vec<Complex64>, p: f64| -> Vec<Complex64> {
            let s = p.sqrt();
            v.into_iter().map(|x| x / c(s, 0.0)).collect()
        };
        PostSelected {
            state0: normalize(raw0, p0),
            p0,
            state1: normalize(raw1, p1),
            p1,
        }
    }

    fn hadamard_on(state: &mut [Complex64], n_dim: usize, ancilla: usize) {
        let stride = n_dim << ancilla;
        let total = state.len();
        let inv_sqrt2 = c(1.0 / 2f64.sqrt(), 0.0);
        let mut base = 0;
        while base < total {
            for off in 0..stride {
                let i0 = base + off;
                let i1 = i0 + stride;
                let (a, b) = (state[i0], state[i1]);
                state[i0] = (a + b) * inv_sqrt2;
                state[i1] = (a - b) * inv_sqrt2;
            }
            base += 2 * stride;
        }
    }

    fn controlled_unitary(
        state: &mut [Complex64],
        n_dim: usize,
        ancilla: usize,
        u: &DMatrix<Complex64>,
    ) {
        let total = state.len() / n_dim;
        for block in 0..total {
            if block & (1 << ancilla) == 0 {
                continue;
            }
            let base = block * n_dim;
            let chunk: Vec<Complex64> = state[base..base + n_dim].to_vec();
            let new = matvec(u, &chunk);
            state[base..base + n_dim].copy_from_slice(&new);
        }
    }

    fn apply_on_work(state: &mut [Complex64], n_dim: usize, u: &DMatrix<Complex64>) {
        let total = state.len() / n_dim;
        for block in 0..total {
            let base = block * n_dim;
            let chunk: Vec<Complex64> = state[base..base + n_dim].to_vec();
            let new = matvec(u, &chunk);
            state[base..base + n_dim].copy_from_slice(&new);
        }
    }
}
