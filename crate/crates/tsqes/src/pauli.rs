//! Pauli-string algebra: weighted sums of n-qubit Pauli strings.
//!
//! A Hermitian operator is stored as
//!
//!   H = Σ_k  c_k · P_k,   c_k ∈ ℝ,
//!
//! where each P_k is a tensor product of single-qubit Pauli operators.
//! Strings are packed as two bitmasks (x_mask, z_mask), two bits per qubit:
//! X = (1,0), Z = (0,1), Y = (1,1), I = (0,0). Acting on a computational
//! basis state |b> a string permutes the index and attaches a phase,
//!
//!   P |b> = i^{|Y|} (-1)^{popcount(b & z_mask)} |b ^ x_mask>,
//!
//! so applying a sum to a statevector never materializes a matrix.
//!
//! Qubit 0 is the leftmost letter of the text form and maps to the most
//! significant bit of the basis index, i.e. |q0 q1 ... q_{n-1}>.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;

use crate::dense::DenseHermitian;
use crate::error::{Error, Result};
use crate::operator::HermitianOperator;

/// Coefficients with |c| below this are dropped during canonicalization.
pub const ZERO_COEFF_EPS: f64 = 1e-15;

/// Default cap (in qubits) for anything that materializes a dense matrix.
pub const DEFAULT_DENSE_CAP: usize = 14;

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// 2x2 matrix, row-major.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => [[one, zero], [zero, one]],
            Pauli::X => [[zero, one], [one, zero]],
            Pauli::Y => [[zero, -i], [i, zero]],
            Pauli::Z => [[one, zero], [zero, -one]],
        }
    }
}

/// A tensor product of single-qubit Paulis on `qubit_count` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    qubit_count: usize,
    x_mask: u64,
    z_mask: u64,
}

impl PauliString {
    /// Identity string on `n` qubits.
    pub fn identity(n: usize) -> Result<PauliString> {
        if n == 0 || n > 64 {
            return Err(Error::InvalidArgument(format!(
                "qubit count must be in 1..=64, got {n}"
            )));
        }
        Ok(PauliString {
            qubit_count: n,
            x_mask: 0,
            z_mask: 0,
        })
    }

    /// Build from letters, leftmost letter = qubit 0.
    pub fn from_letters(letters: &[Pauli]) -> Result<PauliString> {
        let n = letters.len();
        let mut s = PauliString::identity(n)?;
        for (q, &p) in letters.iter().enumerate() {
            s.set(q, p);
        }
        Ok(s)
    }

    /// Parse a text form like `"XIZY"`.
    pub fn parse(text: &str) -> Result<PauliString> {
        let mut letters = Vec::with_capacity(text.len());
        for c in text.chars() {
            let p = Pauli::from_char(c).ok_or_else(|| Error::InvalidArgument(format!(
                "invalid Pauli letter '{c}' (expected one of I, X, Y, Z)"
            )))?;
            letters.push(p);
        }
        PauliString::from_letters(&letters)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    fn bit(&self, qubit: usize) -> u64 {
        1u64 << (self.qubit_count - 1 - qubit)
    }

    /// Set the operator on one qubit.
    pub fn set(&mut self, qubit: usize, p: Pauli) {
        let bit = self.bit(qubit);
        let (x, z) = match p {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        };
        if x {
            self.x_mask |= bit;
        } else {
            self.x_mask &= !bit;
        }
        if z {
            self.z_mask |= bit;
        } else {
            self.z_mask &= !bit;
        }
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        let bit = self.bit(qubit);
        match (self.x_mask & bit != 0, self.z_mask & bit != 0) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.qubit_count).map(|q| self.get(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    /// Phase prefactor i^{number of Y letters}.
    fn global_phase(&self) -> Complex64 {
        match (self.x_mask & self.z_mask).count_ones() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// The image and phase of a single basis state: P|b> = phase * |b ^ x_mask>.
    pub fn map_basis_state(&self, b: usize) -> (usize, Complex64) {
        let sign = if ((b as u64) & self.z_mask).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        let target = b ^ (self.x_mask as usize);
        (target, self.global_phase() * sign)
    }

    /// Apply to a statevector of length 2^n.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = 1usize << self.qubit_count;
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: v.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        self.apply_scaled_into(Complex64::new(1.0, 0.0), v, &mut out);
        Ok(out)
    }

    /// out += coeff * P * v. Caller guarantees matching lengths.
    pub(crate) fn apply_scaled_into(&self, coeff: Complex64, v: &[Complex64], out: &mut [Complex64]) {
        let phase = self.global_phase() * coeff;
        let x = self.x_mask as usize;
        let z = self.z_mask;
        for (b, &amp) in v.iter().enumerate() {
            let sign = if ((b as u64) & z).count_ones() % 2 == 0 {
                phase
            } else {
                -phase
            };
            out[b ^ x] += sign * amp;
        }
    }

    fn cmp_lexicographic(&self, other: &PauliString) -> Ordering {
        for q in 0..self.qubit_count {
            match self.get(q).cmp(&other.get(q)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.qubit_count {
            write!(f, "{}", self.get(q).to_char())?;
        }
        Ok(())
    }
}

/// One weighted term of a Pauli sum. Coefficients are real: the operators
/// represented here are Hermitian, and a complex coefficient at construction
/// is an encoding bug upstream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm {
    coefficient: f64,
    string: PauliString,
}

impl PauliTerm {
    pub fn new(coefficient: f64, string: PauliString) -> Result<PauliTerm> {
        if !coefficient.is_finite() {
            return Err(Error::NonFiniteCoefficient(coefficient));
        }
        Ok(PauliTerm {
            coefficient,
            string,
        })
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn string(&self) -> &PauliString {
        &self.string
    }
}

/// A Hermitian operator as a canonical weighted sum of Pauli strings.
///
/// Canonical means: terms sorted lexicographically by string, duplicate
/// strings merged, coefficients below [`ZERO_COEFF_EPS`] dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    qubit_count: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    /// Build a canonical sum from raw terms. This is the canonicalization
    /// entry point: merging, zero-dropping and ordering happen here, and the
    /// result is idempotent under re-canonicalization.
    pub fn from_terms(qubit_count: usize, terms: Vec<PauliTerm>) -> Result<PauliSum> {
        if qubit_count == 0 || qubit_count > 64 {
            return Err(Error::InvalidArgument(format!(
                "qubit count must be in 1..=64, got {qubit_count}"
            )));
        }
        for t in &terms {
            if t.string.qubit_count() != qubit_count {
                return Err(Error::StringLength {
                    expected: qubit_count,
                    actual: t.string.qubit_count(),
                });
            }
        }
        let mut merged: HashMap<PauliString, f64> = HashMap::with_capacity(terms.len());
        for t in terms {
            *merged.entry(t.string).or_insert(0.0) += t.coefficient;
        }
        let mut out: Vec<PauliTerm> = merged
            .into_iter()
            .filter(|(_, c)| c.abs() >= ZERO_COEFF_EPS)
            .map(|(s, c)| PauliTerm {
                coefficient: c,
                string: s,
            })
            .collect();
        out.sort_by(|a, b| a.string.cmp_lexicographic(&b.string));
        Ok(PauliSum {
            qubit_count,
            terms: out,
        })
    }

    /// Convenience constructor from (coefficient, text) pairs.
    pub fn parse_terms(qubit_count: usize, entries: &[(f64, &str)]) -> Result<PauliSum> {
        let mut terms = Vec::with_capacity(entries.len());
        for &(c, s) in entries {
            terms.push(PauliTerm::new(c, PauliString::parse(s)?)?);
        }
        PauliSum::from_terms(qubit_count, terms)
    }

    /// Re-canonicalize (idempotent; sums are already canonical on construction).
    pub fn canonicalize(&self) -> PauliSum {
        PauliSum::from_terms(self.qubit_count, self.terms.clone())
            .expect("canonical sum stays valid")
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the identity string (0 if absent).
    pub fn identity_coefficient(&self) -> f64 {
        self.terms
            .iter()
            .find(|t| t.string.is_identity())
            .map_or(0.0, |t| t.coefficient)
    }

    /// Σ |c_k| over all terms.
    pub fn one_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.abs()).sum()
    }

    /// Σ |c_k| over non-identity terms; bounds the spectral radius of H - c0·I.
    pub fn traceless_one_norm(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| !t.string.is_identity())
            .map(|t| t.coefficient.abs())
            .sum()
    }

    /// H·v without building a matrix.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = 1usize << self.qubit_count;
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: v.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for t in &self.terms {
            t.string
                .apply_scaled_into(Complex64::new(t.coefficient, 0.0), v, &mut out);
        }
        Ok(out)
    }

    /// Dense matrix form, capped at `cap` qubits.
    pub fn to_dense_with_cap(&self, cap: usize) -> Result<DenseHermitian> {
        if self.qubit_count > cap {
            return Err(Error::DenseCapExceeded {
                cap,
                dim: 1usize << cap,
                requested: self.qubit_count,
            });
        }
        let dim = 1usize << self.qubit_count;
        let mut mat = nalgebra::DMatrix::<Complex64>::zeros(dim, dim);
        for t in &self.terms {
            let c = Complex64::new(t.coefficient, 0.0);
            for b in 0..dim {
                let (target, phase) = t.string.map_basis_state(b);
                mat[(target, b)] += c * phase;
            }
        }
        DenseHermitian::new(mat)
    }

    /// Dense matrix form at the default cap of [`DEFAULT_DENSE_CAP`] qubits.
    pub fn to_dense(&self) -> Result<DenseHermitian> {
        self.to_dense_with_cap(DEFAULT_DENSE_CAP)
    }
}

impl HermitianOperator for PauliSum {
    fn dimension(&self) -> usize {
        1usize << self.qubit_count
    }

    fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        PauliSum::apply(self, v)
    }

    fn one_norm(&self) -> f64 {
        PauliSum::one_norm(self)
    }

    /// Exact interval by dense diagonalization when the qubit count allows,
    /// otherwise the one-norm fallback c0 ± Σ_{k≠I} |c_k|.
    fn spectral_interval(&self) -> (f64, f64) {
        if self.qubit_count <= DEFAULT_DENSE_CAP {
            if let Ok(dense) = self.to_dense() {
                return dense.spectral_interval();
            }
        }
        let c0 = self.identity_coefficient();
        let r = self.traceless_one_norm();
        (c0 - r, c0 + r)
    }

    fn to_dense(&self) -> Result<DenseHermitian> {
        PauliSum::to_dense(self)
    }
}
