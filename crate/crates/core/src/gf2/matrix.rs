use std::fmt;

use super::vector::{dot_words, words_for, BitVec};
use super::{MatrixError, Permutation};

/// Dense matrix over GF(2).
///
/// Rows are packed little-endian into `u64` words with a fixed stride. Bits
/// past `n_cols` in the last word of every row are always zero, so row XOR
/// and popcount can work word-at-a-time without masking.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n_rows: usize,
    n_cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        let stride = words_for(n_cols);
        BitMatrix {
            n_rows,
            n_cols,
            stride,
            data: vec![0; n_rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks row vectors of length `n_cols`.
    pub fn from_rows<'a, I>(n_cols: usize, rows: I) -> Result<Self, MatrixError>
    where
        I: IntoIterator<Item = &'a BitVec>,
    {
        let mut m = Self::zeros(0, n_cols);
        for row in rows {
            m.push_row(row)?;
        }
        Ok(m)
    }

    /// Builds a matrix from `'0'`/`'1'` row strings. Convenience for tests and fixtures.
    pub fn from_row_strs(rows: &[&str]) -> Result<Self, MatrixError> {
        super::parse_matrix(&rows.join("\n"))
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n_rows == 0 || self.n_cols == 0
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.n_rows && c < self.n_cols,
            "index ({r},{c}) out of range"
        );
        (self.data[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.n_rows && c < self.n_cols,
            "index ({r},{c}) out of range"
        );
        let w = &mut self.data[r * self.stride + c / 64];
        let mask = 1u64 << (c % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Packed words of row `r`.
    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_vec(&self, r: usize) -> BitVec {
        BitVec::from_words(self.n_cols, self.row(r))
    }

    pub fn rows(&self) -> impl Iterator<Item = BitVec> + '_ {
        (0..self.n_rows).map(move |r| self.row_vec(r))
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.n_rows);
        for r in 0..self.n_rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn push_row(&mut self, row: &BitVec) -> Result<(), MatrixError> {
        if row.len() != self.n_cols {
            return Err(MatrixError::DimensionMismatch {
                op: "push_row",
                left: (self.n_rows, self.n_cols),
                right: (1, row.len()),
            });
        }
        self.data.extend_from_slice(row.words());
        self.n_rows += 1;
        Ok(())
    }

    /// `row[dst] ^= row[src]`
    #[inline]
    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s] as &[u64], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= x;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// In-place Gauss-Jordan elimination. Returns the pivot columns; the first
    /// `pivots.len()` rows are the reduced nonzero rows, the rest are zero.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.n_cols {
            if next == self.n_rows {
                break;
            }
            let (word, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) =
                (next..self.n_rows).find(|&r| self.data[r * self.stride + word] & bit != 0)
            else {
                continue;
            };
            self.swap_rows(p, next);
            for r in 0..self.n_rows {
                if r != next && self.data[r * self.stride + word] & bit != 0 {
                    self.xor_row_into(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().len()
    }

    /// Reduced row-echelon form with zero rows dropped, plus the pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate();
        m.truncate_rows(pivots.len());
        (m, pivots)
    }

    fn truncate_rows(&mut self, n: usize) {
        self.n_rows = n;
        self.data.truncate(n * self.stride);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.n_cols, self.n_rows);
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn multiply(&self, rhs: &BitMatrix) -> Result<BitMatrix, MatrixError> {
        if self.n_cols != rhs.n_rows {
            return Err(MatrixError::DimensionMismatch {
                op: "multiply",
                left: (self.n_rows, self.n_cols),
                right: (rhs.n_rows, rhs.n_cols),
            });
        }
        let mut out = BitMatrix::zeros(self.n_rows, rhs.n_cols);
        for r in 0..self.n_rows {
            for k in 0..self.n_cols {
                if self.get(r, k) {
                    let src = rhs.row(k);
                    for (d, s) in out.row_mut(r).iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · otherᵀ`, computed row-against-row without materialising the transpose.
    pub fn mul_transpose(&self, other: &BitMatrix) -> Result<BitMatrix, MatrixError> {
        if self.n_cols != other.n_cols {
            return Err(MatrixError::DimensionMismatch {
                op: "mul_transpose",
                left: (self.n_rows, self.n_cols),
                right: (other.n_rows, other.n_cols),
            });
        }
        let mut out = BitMatrix::zeros(self.n_rows, other.n_rows);
        for r in 0..self.n_rows {
            for c in 0..other.n_rows {
                if dot_words(self.row(r), other.row(c)) {
                    out.set(r, c, true);
                }
            }
        }
        Ok(out)
    }

    /// `M · vᵀ` as a vector of length `n_rows`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, MatrixError> {
        if v.len() != self.n_cols {
            return Err(MatrixError::DimensionMismatch {
                op: "mul_vec",
                left: (self.n_rows, self.n_cols),
                right: (1, v.len()),
            });
        }
        let mut out = BitVec::zeros(self.n_rows);
        for r in 0..self.n_rows {
            if dot_words(self.row(r), v.words()) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Basis (as rows) of `{x : M·xᵀ = 0}`.
    pub fn right_kernel_basis(&self) -> BitMatrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.n_cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = BitMatrix::zeros(0, self.n_cols);
        for f in (0..self.n_cols).filter(|&c| !is_pivot[c]) {
            let mut x = BitVec::zeros(self.n_cols);
            x.set(f, true);
            for (row, &p) in pivots.iter().enumerate() {
                if r.get(row, f) {
                    x.set(p, true);
                }
            }
            basis.push_row(&x).expect("kernel vector has n_cols bits");
        }
        basis
    }

    /// Column `j` of the result is column `p⁻¹(j)` of `self`, i.e. `self · P_p`.
    pub fn apply_permutation(&self, p: &Permutation) -> Result<BitMatrix, MatrixError> {
        if p.len() != self.n_cols {
            return Err(MatrixError::DimensionMismatch {
                op: "apply_permutation",
                left: (self.n_rows, self.n_cols),
                right: (p.len(), p.len()),
            });
        }
        let mut out = BitMatrix::zeros(self.n_rows, self.n_cols);
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                if self.get(r, c) {
                    out.set(r, p.apply(c), true);
                }
            }
        }
        Ok(out)
    }

    /// `(A | B)`
    pub fn concat_columns(&self, rhs: &BitMatrix) -> Result<BitMatrix, MatrixError> {
        if self.n_rows != rhs.n_rows {
            return Err(MatrixError::DimensionMismatch {
                op: "concat_columns",
                left: (self.n_rows, self.n_cols),
                right: (rhs.n_rows, rhs.n_cols),
            });
        }
        let mut out = BitMatrix::zeros(self.n_rows, self.n_cols + rhs.n_cols);
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                if self.get(r, c) {
                    out.set(r, c, true);
                }
            }
            for c in 0..rhs.n_cols {
                if rhs.get(r, c) {
                    out.set(r, self.n_cols + c, true);
                }
            }
        }
        Ok(out)
    }

    /// Rows of `self` followed by rows of `rhs`.
    pub fn stack(&self, rhs: &BitMatrix) -> Result<BitMatrix, MatrixError> {
        if self.n_cols != rhs.n_cols {
            return Err(MatrixError::DimensionMismatch {
                op: "stack",
                left: (self.n_rows, self.n_cols),
                right: (rhs.n_rows, rhs.n_cols),
            });
        }
        let mut out = self.clone();
        out.data.extend_from_slice(&rhs.data);
        out.n_rows += rhs.n_rows;
        Ok(out)
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<BitMatrix, MatrixError> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.n_cols) {
            return Err(MatrixError::IndexOutOfRange {
                index: bad,
                len: self.n_cols,
            });
        }
        let mut out = BitMatrix::zeros(self.n_rows, cols.len());
        for r in 0..self.n_rows {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        Ok(out)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<BitMatrix, MatrixError> {
        let mut out = BitMatrix::zeros(0, self.n_cols);
        for &r in rows {
            if r >= self.n_rows {
                return Err(MatrixError::IndexOutOfRange {
                    index: r,
                    len: self.n_rows,
                });
            }
            out.data.extend_from_slice(self.row(r));
            out.n_rows += 1;
        }
        Ok(out)
    }

    /// Drops the columns at the given indices (duplicates ignored); survivors keep their order.
    pub fn remove_columns(&self, indices: &[usize]) -> Result<BitMatrix, MatrixError> {
        let mut drop = vec![false; self.n_cols];
        for &i in indices {
            if i >= self.n_cols {
                return Err(MatrixError::IndexOutOfRange {
                    index: i,
                    len: self.n_cols,
                });
            }
            drop[i] = true;
        }
        let keep: Vec<usize> = (0..self.n_cols).filter(|&c| !drop[c]).collect();
        self.select_columns(&keep)
    }

    /// `(U ∖ V)`: removes the columns of `v` from `self` as a multiset of
    /// column values. The earliest matching occurrence of each value goes first.
    pub fn remove_column_values(&self, v: &BitMatrix) -> Result<BitMatrix, MatrixError> {
        if self.n_rows != v.n_rows {
            return Err(MatrixError::DimensionMismatch {
                op: "remove_column_values",
                left: (self.n_rows, self.n_cols),
                right: (v.n_rows, v.n_cols),
            });
        }
        let mine: Vec<BitVec> = (0..self.n_cols).map(|c| self.column(c)).collect();
        let mut taken = vec![false; self.n_cols];
        for j in 0..v.n_cols {
            let want = v.column(j);
            let hit = (0..self.n_cols).find(|&c| !taken[c] && mine[c] == want);
            match hit {
                Some(c) => taken[c] = true,
                None => {
                    return Err(MatrixError::InsufficientMultiplicity {
                        column: want.to_string(),
                    })
                }
            }
        }
        let keep: Vec<usize> = (0..self.n_cols).filter(|&c| !taken[c]).collect();
        self.select_columns(&keep)
    }

    /// True when every padding bit is zero.
    #[cfg(test)]
    pub(crate) fn padding_is_clean(&self) -> bool {
        if self.stride == 0 {
            return true;
        }
        let mask = super::vector::tail_mask(self.n_cols);
        (0..self.n_rows).all(|r| self.row(r)[self.stride - 1] & !mask == 0)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format_matrix(self))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.n_rows, self.n_cols)?;
        for r in 0..self.n_rows {
            writeln!(f, "  {}", self.row_vec(r))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_row_strs(rows).unwrap()
    }

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(4, 6).rank(), 0);
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
    }

    #[test]
    fn rref_identity_and_duplicates() {
        let (r, p) = BitMatrix::identity(3).rref();
        assert_eq!(r, BitMatrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = m(&["1011", "1011"]).rref();
        assert_eq!(r, m(&["1011"]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_of_identity_and_all_one_row() {
        assert_eq!(BitMatrix::identity(5).right_kernel_basis().n_rows(), 0);
        let k = m(&["11111"]).right_kernel_basis();
        assert_eq!(k.n_rows(), 4);
        for row in k.rows() {
            assert_eq!(row.weight() % 2, 0);
        }
        assert_eq!(k.rank(), 4);
    }

    #[test]
    fn multiply_dimension_mismatch() {
        let a = BitMatrix::zeros(2, 3);
        assert!(matches!(
            a.multiply(&a),
            Err(MatrixError::DimensionMismatch { op: "multiply", .. })
        ));
    }

    #[test]
    fn multiply_by_identity() {
        let a = m(&["10110", "01101", "11111"]);
        assert_eq!(a.multiply(&BitMatrix::identity(5)).unwrap(), a);
        assert_eq!(
            a.mul_transpose(&a).unwrap(),
            a.multiply(&a.transpose()).unwrap()
        );
    }

    #[test]
    fn wide_rows_keep_padding_clean() {
        let mut a = BitMatrix::zeros(3, 130);
        a.set(0, 129, true);
        a.set(1, 64, true);
        a.set(2, 0, true);
        let t = a.transpose().transpose();
        assert_eq!(t, a);
        let (r, p) = a.stack(&a).unwrap().rref();
        assert_eq!(p, vec![0, 64, 129]);
        assert!(r.padding_is_clean());
        assert_eq!(a.right_kernel_basis().n_rows(), 127);
    }

    #[test]
    fn remove_column_values_multiset() {
        let a = m(&["1010", "0101"]);
        // columns 10, 01, 10, 01
        let v = m(&["1", "0"]);
        assert_eq!(a.remove_column_values(&v).unwrap(), m(&["010", "101"]));
        let vv = m(&["111", "000"]);
        assert!(matches!(
            a.remove_column_values(&vv),
            Err(MatrixError::InsufficientMultiplicity { .. })
        ));
        let none = BitMatrix::zeros(2, 0);
        assert_eq!(a.remove_column_values(&none).unwrap(), a);
    }

    #[test]
    fn concat_and_stack_shapes() {
        let a = m(&["10", "01"]);
        let b = m(&["1", "1"]);
        assert_eq!(a.concat_columns(&b).unwrap(), m(&["101", "011"]));
        assert!(a.stack(&b).is_err());
        assert_eq!(a.stack(&a).unwrap().n_rows(), 4);
    }
}
