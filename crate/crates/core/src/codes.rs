//! Binary linear codes held as canonical generator matrices.
//!
//! A [`LinearCode`] always stores the reduced row-echelon form of its
//! generator, so two values compare equal exactly when they span the same
//! subspace. Duals come from the right kernel, intersections from duals of
//! sums, and minimum distances from a Gray-code sweep over all codewords.

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec, MatrixError, Permutation};
use crate::par::{self, Strategy};

/// Largest dimension enumerated by default when computing distances.
pub const DEFAULT_ENUMERATION_BOUND: usize = 28;

/// Sweeps of at most `2^SEQUENTIAL_SWEEP_BITS` codewords never fan out.
const SEQUENTIAL_SWEEP_BITS: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("codes have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("dimension {k} exceeds the enumeration bound {bound}")]
    DimensionOverBound { k: usize, bound: usize },
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Knobs for exhaustive codeword enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_dimension: usize,
    pub strategy: Strategy,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            max_dimension: DEFAULT_ENUMERATION_BOUND,
            strategy: Strategy::default(),
        }
    }
}

/// Codeword counts `A_0..A_n` by Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Smallest positive weight present, `None` for the zero code.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts
            .iter()
            .skip(1)
            .position(|&c| c > 0)
            .map(|i| i + 1)
    }

    /// Weights with a nonzero count, excluding weight 0.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        (1..self.counts.len())
            .filter(|&w| self.counts[w] > 0)
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    n: usize,
    generator: BitMatrix,
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LinearCode[{}, {}] {:?}",
            self.n,
            self.k(),
            self.generator
        )
    }
}

impl LinearCode {
    /// The row space of `m`; dependent and zero rows are dropped.
    pub fn from_generator(m: &BitMatrix) -> Self {
        let (generator, _) = m.rref();
        LinearCode {
            n: m.n_cols(),
            generator,
        }
    }

    pub fn zero(n: usize) -> Self {
        LinearCode {
            n,
            generator: BitMatrix::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Self {
        LinearCode {
            n,
            generator: BitMatrix::identity(n),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.generator.n_rows()
    }

    /// Canonical (RREF) generator matrix.
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::from_generator(&self.generator.right_kernel_basis())
    }

    fn check_length(&self, other: &LinearCode) -> Result<(), CodeError> {
        if self.n != other.n {
            return Err(CodeError::LengthMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// `C1 + C2`
    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode, CodeError> {
        self.check_length(other)?;
        Ok(LinearCode::from_generator(
            &self.generator.stack(&other.generator)?,
        ))
    }

    /// `C1 ∩ C2`, computed as `(C1⊥ + C2⊥)⊥`.
    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode, CodeError> {
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// `Hull(C) = C ∩ C⊥`
    pub fn hull(&self) -> LinearCode {
        self.intersection(&self.dual())
            .expect("a code and its dual have equal length")
    }

    /// `dim(C1 ∩ C2) = k1 − rank(G1 H2ᵀ)` with `H2` a parity-check matrix of `C2`.
    pub fn intersection_dim_via_rank(&self, other: &LinearCode) -> Result<usize, CodeError> {
        self.check_length(other)?;
        let h2 = other.generator.right_kernel_basis();
        Ok(self.k() - self.generator.mul_transpose(&h2)?.rank())
    }

    /// `dim(C1 ∩ C2⊥) = k1 − rank(G1 G2ᵀ)`.
    pub fn dim_meet_dual(&self, other: &LinearCode) -> Result<usize, CodeError> {
        self.check_length(other)?;
        Ok(self.k() - self.generator.mul_transpose(&other.generator)?.rank())
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut rest = v.clone();
        for r in 0..self.k() {
            let row = self.generator.row_vec(r);
            let pivot = row.ones_iter().next().expect("RREF rows are nonzero");
            if rest.get(pivot) {
                rest.xor_assign(&row);
            }
        }
        rest.is_zero()
    }

    pub fn contains_all_one(&self) -> bool {
        self.contains(&BitVec::ones(self.n))
    }

    /// Every codeword has even weight, i.e. the all-one vector lies in `C⊥`.
    pub fn is_even_like(&self) -> bool {
        self.generator
            .mul_vec(&BitVec::ones(self.n))
            .expect("all-one vector has length n")
            .is_zero()
    }

    /// `xG` for a message `x` of length `k`.
    pub fn encode(&self, message: &BitVec) -> BitVec {
        assert_eq!(
            message.len(),
            self.k(),
            "message length must equal dimension"
        );
        let mut c = BitVec::zeros(self.n);
        for i in message.ones_iter() {
            c.xor_assign(&self.generator.row_vec(i));
        }
        c
    }

    pub fn permute(&self, p: &Permutation) -> Result<LinearCode, CodeError> {
        Ok(LinearCode::from_generator(
            &self.generator.apply_permutation(p)?,
        ))
    }

    /// Deletes the given coordinates.
    pub fn puncture(&self, positions: &[usize]) -> Result<LinearCode, CodeError> {
        Ok(LinearCode::from_generator(
            &self.generator.remove_columns(positions)?,
        ))
    }

    /// `{0} × C`: prepends a zero coordinate.
    pub fn zero_extend(&self) -> LinearCode {
        let lead = BitMatrix::zeros(self.k(), 1);
        LinearCode::from_generator(
            &lead
                .concat_columns(&self.generator)
                .expect("row counts agree"),
        )
    }

    pub fn weight_distribution(&self) -> Result<WeightDistribution, CodeError> {
        self.weight_distribution_with(&EnumerationConfig::default())
    }

    pub fn weight_distribution_with(
        &self,
        cfg: &EnumerationConfig,
    ) -> Result<WeightDistribution, CodeError> {
        let k = self.k();
        if k > cfg.max_dimension {
            return Err(CodeError::DimensionOverBound {
                k,
                bound: cfg.max_dimension,
            });
        }
        let sweep = CodewordSweep::new(&self.generator);
        let counts = if k <= SEQUENTIAL_SWEEP_BITS {
            sweep.weight_counts(0, 1u64 << k)
        } else {
            let chunk_bits = SEQUENTIAL_SWEEP_BITS;
            let chunks = 1u64 << (k - chunk_bits);
            let parts = par::map_range(cfg.strategy, 0..chunks, |c| {
                sweep.weight_counts(c << chunk_bits, (c + 1) << chunk_bits)
            });
            let mut total = vec![0u64; self.n + 1];
            for part in parts {
                for (t, p) in total.iter_mut().zip(part) {
                    *t += p;
                }
            }
            total
        };
        Ok(WeightDistribution { counts })
    }

    pub fn min_distance(&self) -> Result<usize, CodeError> {
        self.min_distance_with(&EnumerationConfig::default())
    }

    pub fn min_distance_with(&self, cfg: &EnumerationConfig) -> Result<usize, CodeError> {
        self.weight_distribution_with(cfg)?
            .min_distance()
            .ok_or(CodeError::ZeroCode)
    }
}

/// `min{d(C1), d(C2⊥)}`
pub fn security_parameter(c1: &LinearCode, c2: &LinearCode) -> Result<usize, CodeError> {
    c1.check_length(c2)?;
    Ok(c1.min_distance()?.min(c2.dual().min_distance()?))
}

/// Walks codewords in Gray-code order, one row XOR per step.
pub(crate) struct CodewordSweep {
    stride: usize,
    rows: Vec<u64>,
    k: usize,
    n: usize,
}

impl CodewordSweep {
    pub(crate) fn new(g: &BitMatrix) -> Self {
        let mut rows = Vec::new();
        for r in 0..g.n_rows() {
            rows.extend_from_slice(g.row(r));
        }
        CodewordSweep {
            stride: g.n_cols().div_ceil(64),
            rows,
            k: g.n_rows(),
            n: g.n_cols(),
        }
    }

    /// Weight histogram of the codewords at Gray indices `start..end`.
    pub(crate) fn weight_counts(&self, start: u64, end: u64) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        if self.k == 0 || self.stride == 0 {
            counts[0] = 1;
            return counts;
        }
        let g = start ^ (start >> 1);
        let set_rows = (0..self.k).filter(|&i| (g >> i) & 1 == 1);
        if self.stride == 1 {
            let rows = &self.rows;
            let mut cw = set_rows.fold(0u64, |acc, i| acc ^ rows[i]);
            counts[cw.count_ones() as usize] += 1;
            for t in start + 1..end {
                cw ^= rows[t.trailing_zeros() as usize];
                counts[cw.count_ones() as usize] += 1;
            }
        } else {
            let s = self.stride;
            let mut cw = vec![0u64; s];
            for i in set_rows {
                xor_into(&mut cw, &self.rows[i * s..(i + 1) * s]);
            }
            counts[weight(&cw)] += 1;
            for t in start + 1..end {
                let i = t.trailing_zeros() as usize;
                xor_into(&mut cw, &self.rows[i * s..(i + 1) * s]);
                counts[weight(&cw)] += 1;
            }
        }
        counts
    }
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

#[inline]
fn weight(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Minimum distance of the code spanned by single-word rows (`n ≤ 64`).
/// The rows must be linearly independent.
pub(crate) fn min_distance_words(rows: &[u64]) -> usize {
    let mut cw = 0u64;
    let mut best = u32::MAX;
    for t in 1u64..(1u64 << rows.len()) {
        cw ^= rows[t.trailing_zeros() as usize];
        best = best.min(cw.count_ones());
    }
    best as usize
}
