//! Jordan-Wigner encoding of fermionic operators, plus number-sector
//! plumbing for fixed-particle-number work.
//!
//! Mode j maps to qubit j (leftmost letter), with |1> = occupied, and
//!
//!   a_j'  ->  Z_0 ... Z_{j-1} (X_j - i Y_j)/2,
//!   a_j   ->  Z_0 ... Z_{j-1} (X_j + i Y_j)/2.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::dense::DenseHermitian;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum, PauliTerm};

/// An ordered product of creation/annihilation operators with a real weight.
/// `ops` is applied right-to-left like any operator product; `dagger = true`
/// marks a creation operator.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionicTerm {
    pub coefficient: f64,
    pub ops: Vec<(usize, bool)>,
}

impl FermionicTerm {
    pub fn new(coefficient: f64, ops: Vec<(usize, bool)>) -> FermionicTerm {
        FermionicTerm { coefficient, ops }
    }

    /// coeff * a_p' a_q (a hop q -> p when p != q, the number operator n_p
    /// when p == q).
    pub fn hop(coefficient: f64, p: usize, q: usize) -> FermionicTerm {
        FermionicTerm::new(coefficient, vec![(p, true), (q, false)])
    }

    /// coeff * n_p n_q.
    pub fn density_density(coefficient: f64, p: usize, q: usize) -> FermionicTerm {
        FermionicTerm::new(
            coefficient,
            vec![(p, true), (p, false), (q, true), (q, false)],
        )
    }
}

fn mul_single(a: Pauli, b: Pauli) -> (Pauli, Complex64) {
    use Pauli::*;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match (a, b) {
        (I, p) => (p, one),
        (p, I) => (p, one),
        (X, X) | (Y, Y) | (Z, Z) => (I, one),
        (X, Y) => (Z, i),
        (Y, X) => (Z, -i),
        (Y, Z) => (X, i),
        (Z, Y) => (X, -i),
        (Z, X) => (Y, i),
        (X, Z) => (Y, -i),
    }
}

/// Multiply an accumulated string (left) by a single-mode ladder image
/// (right): Z on all qubits below `mode`, then `p` on `mode`.
fn mul_ladder_branch(
    letters: &[Pauli],
    coeff: Complex64,
    mode: usize,
    p: Pauli,
    p_coeff: Complex64,
) -> (Vec<Pauli>, Complex64) {
    let mut out = letters.to_vec();
    let mut phase = coeff * p_coeff;
    for (q, letter) in out.iter_mut().enumerate().take(mode) {
        let (r, ph) = mul_single(*letter, Pauli::Z);
        *letter = r;
        phase *= ph;
        let _ = q;
    }
    let (r, ph) = mul_single(out[mode], p);
    out[mode] = r;
    phase *= ph;
    (out, phase)
}

/// Map a Hermitian-closed list of fermionic terms (each term accompanied by
/// its conjugate, or self-conjugate) onto a canonical Pauli sum.
pub fn jordan_wigner(terms: &[FermionicTerm], mode_count: usize) -> Result<PauliSum> {
    if mode_count == 0 || mode_count > 64 {
        return Err(Error::InvalidArgument(format!(
            "mode count must be in 1..=64, got {mode_count}"
        )));
    }
    let mut merged: HashMap<Vec<Pauli>, Complex64> = HashMap::new();
    for term in terms {
        let mut acc: Vec<(Vec<Pauli>, Complex64)> = vec![(
            vec![Pauli::I; mode_count],
            Complex64::new(term.coefficient, 0.0),
        )];
        for &(mode, dagger) in &term.ops {
            if mode >= mode_count {
                return Err(Error::ModeOutOfRange {
                    index: mode,
                    modes: mode_count,
                });
            }
            // a' -> (X - iY)/2, a -> (X + iY)/2, both behind the Z string
            let y_coeff = if dagger {
                Complex64::new(0.0, -0.5)
            } else {
                Complex64::new(0.0, 0.5)
            };
            let mut next = Vec::with_capacity(acc.len() * 2);
            for (letters, coeff) in &acc {
                next.push(mul_ladder_branch(
                    letters,
                    *coeff,
                    mode,
                    Pauli::X,
                    Complex64::new(0.5, 0.0),
                ));
                next.push(mul_ladder_branch(letters, *coeff, mode, Pauli::Y, y_coeff));
            }
            acc = next;
        }
        for (letters, coeff) in acc {
            *merged.entry(letters).or_insert(Complex64::new(0.0, 0.0)) += coeff;
        }
    }

    let scale = merged
        .values()
        .map(|c| c.norm())
        .fold(1.0f64, f64::max);
    let residual = merged.values().map(|c| c.im.abs()).fold(0.0f64, f64::max);
    if residual > 1e-10 * scale {
        return Err(Error::NonHermitianTerms { residual });
    }

    let mut out = Vec::with_capacity(merged.len());
    for (letters, coeff) in merged {
        if coeff.norm() < crate::pauli::ZERO_COEFF_EPS {
            continue;
        }
        out.push(PauliTerm::new(coeff.re, PauliString::from_letters(&letters)?)?);
    }
    PauliSum::from_terms(mode_count, out)
}

/// Indices of computational-basis states with exactly `n_particles` occupied
/// modes, ascending.
pub fn number_sector_basis(mode_count: usize, n_particles: usize) -> Vec<usize> {
    let dim = 1usize << mode_count;
    (0..dim)
        .filter(|b| (b.count_ones() as usize) == n_particles)
        .collect()
}

/// P H P on the span of `basis` (sorted basis-state indices): the
/// sector-restricted dense operator. Pauli strings map basis states to
/// basis states, so each column has at most one entry per term; images that
/// leave the sector are projected away.
pub fn project_to_sector(sum: &PauliSum, basis: &[usize]) -> Result<DenseHermitian> {
    let dim = 1usize << sum.qubit_count();
    let n = basis.len();
    if n == 0 {
        return Err(Error::InvalidArgument("sector basis is empty".into()));
    }
    for w in basis.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidArgument(
                "sector basis must be strictly ascending".into(),
            ));
        }
    }
    if basis[n - 1] >= dim {
        return Err(Error::InvalidArgument(format!(
            "sector basis index {} out of range for dimension {dim}",
            basis[n - 1]
        )));
    }
    let mut mat = nalgebra::DMatrix::<Complex64>::zeros(n, n);
    for (col, &b) in basis.iter().enumerate() {
        for term in sum.terms() {
            let (target, phase) = term.string().map_basis_state(b);
            if let Ok(row) = basis.binary_search(&target) {
                mat[(row, col)] += Complex64::new(term.coefficient(), 0.0) * phase;
            }
        }
    }
    DenseHermitian::new(mat)
}

/// Embed a sector vector back into the full 2^n-dimensional space.
pub fn sector_vector_to_full(
    basis: &[usize],
    v: &[Complex64],
    full_dim: usize,
) -> Result<Vec<Complex64>> {
    if basis.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            actual: v.len(),
        });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); full_dim];
    for (&idx, &amp) in basis.iter().zip(v.iter()) {
        out[idx] = amp;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_operator_image() {
        // n_0 = a_0' a_0 -> (I - Z)/2
        let sum = jordan_wigner(&[FermionicTerm::hop(1.0, 0, 0)], 1).unwrap();
        assert_eq!(sum.terms().len(), 2);
        assert!((sum.identity_coefficient() - 0.5).abs() < 1e-15);
        let z = sum
            .terms()
            .iter()
            .find(|t| t.string().to_string() == "Z")
            .unwrap();
        assert!((z.coefficient() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn hopping_image() {
        // a_0' a_1 + a_1' a_0 -> (X X + Y Y)/2
        let terms = [FermionicTerm::hop(1.0, 0, 1), FermionicTerm::hop(1.0, 1, 0)];
        let sum = jordan_wigner(&terms, 2).unwrap();
        assert_eq!(sum.terms().len(), 2);
        for t in sum.terms() {
            let s = t.string().to_string();
            assert!(s == "XX" || s == "YY", "unexpected string {s}");
            assert!((t.coefficient() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let err = jordan_wigner(&[FermionicTerm::hop(1.0, 0, 1)], 2).unwrap_err();
        assert!(matches!(err, Error::NonHermitianTerms { .. }));
    }

    #[test]
    fn mode_out_of_range() {
        let err = jordan_wigner(&[FermionicTerm::hop(1.0, 0, 5)], 2).unwrap_err();
        assert!(matches!(err, Error::ModeOutOfRange { index: 5, modes: 2 }));
    }

    #[test]
    fn sector_basis_small_cases() {
        assert_eq!(number_sector_basis(2, 1), vec![1, 2]);
        assert_eq!(number_sector_basis(12, 6).len(), 924);
        assert_eq!(number_sector_basis(3, 0), vec![0]);
    }

    #[test]
    fn z_string_appears_for_distant_hops() {
        // a_0' a_2 + h.c. crosses mode 1 and must carry a Z there
        let terms = [FermionicTerm::hop(1.0, 0, 2), FermionicTerm::hop(1.0, 2, 0)];
        let sum = jordan_wigner(&terms, 3).unwrap();
        for t in sum.terms() {
            assert_eq!(t.string().get(1), Pauli::Z, "string {}", t.string());
        }
    }
}
