//! Dense linear algebra over GF(2) and coordinate permutations.
//!
//! Everything here is a pure function of immutable values. Matrices are read
//! and written in a plain text format: one row per line made of `0`/`1`
//! characters, blank lines and `#` comments ignored.

mod matrix;
mod permutation;
mod vector;

pub use matrix::BitMatrix;
pub use permutation::{factorial, Permutation};
pub use vector::BitVec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("index {index} out of range for size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("column {column} does not occur often enough to be removed")]
    InsufficientMultiplicity { column: String },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Parses the matrix text format. An input without rows yields a 0×0 matrix.
pub fn parse_matrix(text: &str) -> Result<BitMatrix, MatrixError> {
    let mut rows = Vec::new();
    let mut width = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: BitVec = line.parse().map_err(|_| MatrixError::Parse {
            line: idx + 1,
            reason: "rows may contain only '0' and '1'".into(),
        })?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(MatrixError::Parse {
                    line: idx + 1,
                    reason: format!("row has {} columns, expected {w}", row.len()),
                })
            }
            _ => {}
        }
        rows.push(row);
    }
    BitMatrix::from_rows(width.unwrap_or(0), &rows)
}

/// Writes the matrix text format, one newline-terminated line per row.
pub fn format_matrix(m: &BitMatrix) -> String {
    let mut out = String::with_capacity(m.n_rows() * (m.n_cols() + 1));
    for row in m.rows() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_skips_comments_and_blanks() {
        let m = parse_matrix("# G\n\n101\n  011 \n# end\n").unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (2, 3));
        assert_eq!(format_matrix(&m), "101\n011\n");
    }

    #[test]
    fn parse_rejects_ragged_and_junk() {
        assert!(matches!(
            parse_matrix("101\n01\n"),
            Err(MatrixError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_matrix("1 0 1\n"),
            Err(MatrixError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn empty_text_is_empty_matrix() {
        let m = parse_matrix("# nothing\n").unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (0, 0));
        assert_eq!(format_matrix(&m), "");
    }
}
