#![allow(dead_code)]

use binlcp::{BitMatrix, BitVec, LinearCode};
use rand::Rng;

pub fn code(rows: &[&str]) -> LinearCode {
    LinearCode::from_generator(&BitMatrix::from_row_strs(rows).unwrap())
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen::<bool>() {
                m.set(r, c, true);
            }
        }
    }
    m
}

/// Uniform-ish random `[n, k]` code, retrying until the generator has full rank.
pub fn random_code<R: Rng>(rng: &mut R, n: usize, k: usize) -> LinearCode {
    loop {
        let c = LinearCode::from_generator(&random_matrix(rng, k, n));
        if c.k() == k {
            return c;
        }
    }
}

/// Random `[n, k]` code containing the all-one vector.
pub fn random_code_with_one<R: Rng>(rng: &mut R, n: usize, k: usize) -> LinearCode {
    loop {
        let mut g = random_matrix(rng, k - 1, n);
        g.push_row(&BitVec::ones(n)).unwrap();
        let c = LinearCode::from_generator(&g);
        if c.k() == k {
            return c;
        }
    }
}

/// Random even-like `[n, k]` code, `k < n`.
pub fn random_even_code<R: Rng>(rng: &mut R, n: usize, k: usize) -> LinearCode {
    loop {
        let mut g = random_matrix(rng, k, n);
        for r in 0..k {
            if g.row_vec(r).weight() % 2 == 1 {
                let v = g.get(r, n - 1);
                g.set(r, n - 1, !v);
            }
        }
        let c = LinearCode::from_generator(&g);
        if c.k() == k {
            return c;
        }
    }
}

/// All codewords by brute force over the messages.
pub fn codewords(c: &LinearCode) -> Vec<BitVec> {
    let k = c.k();
    (0u64..1 << k)
        .map(|m| {
            let mut w = BitVec::zeros(c.n());
            for r in 0..k {
                if (m >> r) & 1 == 1 {
                    w.xor_assign(&c.generator().row_vec(r));
                }
            }
            w
        })
        .collect()
}

pub fn naive_min_distance(c: &LinearCode) -> usize {
    codewords(c)
        .iter()
        .filter(|w| !w.is_zero())
        .map(BitVec::weight)
        .min()
        .unwrap_or(0)
}

/// Dimension of `A ∩ B` from the codeword sets.
pub fn naive_intersection_dim(a: &LinearCode, b: &LinearCode) -> usize {
    let bs: std::collections::HashSet<BitVec> = codewords(b).into_iter().collect();
    let common = codewords(a).into_iter().filter(|w| bs.contains(w)).count();
    common.trailing_zeros() as usize
}
