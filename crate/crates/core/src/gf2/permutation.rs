use std::fmt;

use super::MatrixError;

/// A bijection on `{0..n-1}`. `apply(i)` is the position coordinate `i` moves to.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, MatrixError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(MatrixError::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Swaps coordinates `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, MatrixError> {
        for idx in [i, j] {
            if idx >= n {
                return Err(MatrixError::IndexOutOfRange { index: idx, len: n });
            }
        }
        if i == j {
            return Err(MatrixError::InvalidPermutation(format!(
                "transposition needs distinct positions, got {i} twice"
            )));
        }
        let mut p = Self::identity(n);
        p.images.swap(i, j);
        Ok(p)
    }

    /// `(c_0, …, c_{m-1}, …) ↦ (c_{m-1}, c_0, …, c_{m-2}, …)`: the last of the
    /// first `m` coordinates moves to the front and the others shift right.
    pub fn cycle_to_front(n: usize, m: usize) -> Result<Self, MatrixError> {
        if m == 0 || m > n {
            return Err(MatrixError::IndexOutOfRange {
                index: m,
                len: n + 1,
            });
        }
        let mut images: Vec<usize> = (0..n).collect();
        for (i, img) in images.iter_mut().enumerate().take(m - 1) {
            *img = i + 1;
        }
        images[m - 1] = 0;
        Ok(Permutation { images })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ first`: applies `first`, then `self`.
    pub fn compose(&self, first: &Permutation) -> Result<Permutation, MatrixError> {
        if self.len() != first.len() {
            return Err(MatrixError::DimensionMismatch {
                op: "compose",
                left: (self.len(), self.len()),
                right: (first.len(), first.len()),
            });
        }
        Ok(Permutation {
            images: first.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// The `rank`-th permutation of `n` elements in lexicographic order of image lists.
    pub fn unrank(n: usize, mut rank: u64) -> Permutation {
        let mut pool: Vec<usize> = (0..n).collect();
        let mut images = Vec::with_capacity(n);
        for i in (0..n).rev() {
            let f = factorial(i);
            let idx = (rank / f) as usize;
            rank %= f;
            images.push(pool.remove(idx));
        }
        Permutation { images }
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}
