//! Operator file formats.
//!
//! Pauli-sum text, one term per line, `#` starting a comment:
//!
//!   -1.0458 II
//!   0.2512 ZI
//!
//! Dense matrices as a JSON document with a `dimension` field and a
//! row-major `entries` array of `[re, im]` pairs. Statevectors reuse the
//! same entry format for debugging dumps.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dense::DenseHermitian;
use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum, PauliTerm};
use crate::state::StateVector;

pub fn load_pauli_sum(path: impl AsRef<Path>) -> Result<PauliSum> {
    parse_pauli_sum(&fs::read_to_string(path)?)
}

pub fn parse_pauli_sum(text: &str) -> Result<PauliSum> {
    let mut terms: Vec<PauliTerm> = Vec::new();
    let mut qubit_count: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let coeff_text = parts.next().expect("nonempty line has a first token");
        let string_text = parts.next().ok_or_else(|| Error::Parse {
            line: line_no,
            message: "expected `<coefficient> <pauli string>`".into(),
        })?;
        if let Some(extra) = parts.next() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unexpected trailing token `{extra}`"),
            });
        }
        let coeff: f64 = coeff_text.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("`{coeff_text}` is not a real number"),
        })?;
        let string = PauliString::parse(string_text).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        match qubit_count {
            None => qubit_count = Some(string.qubit_count()),
            Some(n) if n != string.qubit_count() => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!(
                        "string length {} differs from earlier length {n}",
                        string.qubit_count()
                    ),
                })
            }
            _ => {}
        }
        terms.push(PauliTerm::new(coeff, string).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?);
    }
    let n = qubit_count.ok_or_else(|| Error::Parse {
        line: 0,
        message: "file contains no terms".into(),
    })?;
    PauliSum::from_terms(n, terms)
}

pub fn save_pauli_sum(path: impl AsRef<Path>, sum: &PauliSum) -> Result<()> {
    let mut f = fs::File::create(path)?;
    for t in sum.terms() {
        writeln!(f, "{} {}", t.coefficient(), t.string())?;
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct DenseDocument {
    dimension: usize,
    /// Row-major [re, im] pairs, dimension^2 of them.
    entries: Vec<[f64; 2]>,
}

pub fn load_dense(path: impl AsRef<Path>) -> Result<DenseHermitian> {
    let text = fs::read_to_string(path)?;
    let doc: DenseDocument = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let n = doc.dimension;
    if doc.entries.len() != n * n {
        return Err(Error::Parse {
            line: 0,
            message: format!(
                "expected {} entries for dimension {n}, found {}",
                n * n,
                doc.entries.len()
            ),
        });
    }
    let mat = nalgebra::DMatrix::from_fn(n, n, |i, j| {
        let [re, im] = doc.entries[i * n + j];
        Complex64::new(re, im)
    });
    DenseHermitian::new(mat)
}

pub fn save_dense(path: impl AsRef<Path>, dense: &DenseHermitian) -> Result<()> {
    let n = dense.dimension();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let c = dense.matrix()[(i, j)];
            entries.push([c.re, c.im]);
        }
    }
    let doc = DenseDocument {
        dimension: n,
        entries,
    };
    fs::write(path, serde_json::to_string(&doc).expect("serializable"))?;
    Ok(())
}

/// Debug dump of a statevector in the dense entry format.
pub fn save_state(path: impl AsRef<Path>, state: &StateVector) -> Result<()> {
    let doc = DenseDocument {
        dimension: state.dimension(),
        entries: state.amplitudes().iter().map(|c| [c.re, c.im]).collect(),
    };
    fs::write(path, serde_json::to_string(&doc).expect("serializable"))?;
    Ok(())
}
