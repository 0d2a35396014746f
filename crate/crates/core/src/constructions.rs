//! Simplex, first-order Reed-Muller and Solomon-Stiffler codes.
//!
//! Columns of `S_k` are the nonzero vectors of `F₂^k` in increasing integer
//! order, reading the top row as the most significant bit. A Solomon-Stiffler
//! code is `s` side-by-side copies of `S_k` with the nonzero vectors of chosen
//! subspaces `U_1, …, U_p` punctured away as a multiset of column values.

use thiserror::Error;

use crate::codes::{CodeError, LinearCode};
use crate::gf2::{BitMatrix, BitVec, MatrixError};
use crate::lcppair::{self, LcpCertificate, LcpError};
use crate::search::subspaces_of;

/// Node budget for the subspace backtracking search.
pub const DEFAULT_SUBSPACE_SEARCH_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no admissible subspace choice for k={k}, s={s}, u={u:?} within the search budget")]
    NoSubspaceChoice { k: usize, s: usize, u: Vec<usize> },
    #[error("constructed code failed validation: {0}")]
    ValidationFailed(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Lcp(#[from] LcpError),
}

impl From<MatrixError> for ConstructionError {
    fn from(e: MatrixError) -> Self {
        ConstructionError::Code(CodeError::Matrix(e))
    }
}

/// Integer value of a length-`k` vector, first coordinate most significant.
pub fn vector_value(v: &BitVec) -> usize {
    v.ones_iter().fold(0, |acc, i| acc | 1 << (v.len() - 1 - i))
}

/// Column vector of `value` in `F₂^k`, first coordinate most significant.
pub fn value_vector(k: usize, value: usize) -> BitVec {
    let mut v = BitVec::zeros(k);
    for r in 0..k {
        if (value >> (k - 1 - r)) & 1 == 1 {
            v.set(r, true);
        }
    }
    v
}

/// `k × (2^k − 1)` matrix of all nonzero columns in increasing order.
pub fn simplex_matrix(k: usize) -> BitMatrix {
    assert!((1..=20).contains(&k), "simplex dimension out of range");
    let cols = (1usize << k) - 1;
    let mut m = BitMatrix::zeros(k, cols);
    for v in 1..=cols {
        for r in 0..k {
            if (v >> (k - 1 - r)) & 1 == 1 {
                m.set(r, v - 1, true);
            }
        }
    }
    m
}

/// `sS_k = (S_k | S_k | ⋯ | S_k)`.
pub fn repeated_simplex(s: usize, k: usize) -> BitMatrix {
    assert!(s >= 1, "need at least one copy");
    let single = simplex_matrix(k);
    let mut m = single.clone();
    for _ in 1..s {
        m = m.concat_columns(&single).expect("equal row counts");
    }
    m
}

/// Generator `(1 1⋯1 ; 0 S_k)` of the first-order Reed-Muller code.
pub fn reed_muller_matrix(k: usize) -> BitMatrix {
    let top = BitMatrix::from_rows(1usize << k, &[BitVec::ones(1usize << k)]).expect("width");
    let body = BitMatrix::zeros(k, 1)
        .concat_columns(&simplex_matrix(k))
        .expect("equal row counts");
    top.stack(&body).expect("equal widths")
}

/// `R(1,k)`, a `[2^k, k+1, 2^(k-1)]` code.
pub fn reed_muller_1(k: usize) -> LinearCode {
    LinearCode::from_generator(&reed_muller_matrix(k))
}

/// `g(k,d) = Σ_{i<k} ⌈d / 2^i⌉`
pub fn griesmer_bound(k: usize, d: usize) -> usize {
    (0..k).map(|i| d.div_ceil(1usize << i)).sum()
}

/// `s = ⌈d / 2^(k-1)⌉` and the exponents `u_1 > … > u_p ≥ 1` with
/// `s·2^(k-1) − d = Σ 2^(u_i − 1)`.
pub fn decompose_deficiency(k: usize, d: usize) -> (usize, Vec<usize>) {
    assert!(k >= 1 && d >= 1, "need k ≥ 1 and d ≥ 1");
    let half = 1usize << (k - 1);
    let s = d.div_ceil(half);
    let deficiency = s * half - d;
    let u = (0..usize::BITS as usize)
        .rev()
        .filter(|&b| (deficiency >> b) & 1 == 1)
        .map(|b| b + 1)
        .collect();
    (s, u)
}

/// `Σ_{i ≤ min(s+1, p)} u_i ≤ s·k`
pub fn belov_condition(s: usize, k: usize, u: &[usize]) -> bool {
    u.iter().take((s + 1).min(u.len())).sum::<usize>() <= s * k
}

/// Columns of the nonzero vectors spanned by `basis` (rows in `F₂^k`), in
/// increasing integer order.
pub fn subspace_columns(basis: &BitMatrix) -> BitMatrix {
    let k = basis.n_cols();
    let values = subspace_values(basis);
    let mut m = BitMatrix::zeros(k, values.len());
    for (c, &v) in values.iter().enumerate() {
        for r in 0..k {
            if (v >> (k - 1 - r)) & 1 == 1 {
                m.set(r, c, true);
            }
        }
    }
    m
}

/// Sorted integer values of the nonzero vectors in the row space of `basis`.
fn subspace_values(basis: &BitMatrix) -> Vec<usize> {
    let rows: Vec<usize> = basis.rows().map(|r| vector_value(&r)).collect();
    let mut values: Vec<usize> = (1u64..(1u64 << rows.len()))
        .map(|mask| {
            rows.iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .fold(0, |acc, (_, &r)| acc ^ r)
        })
        .collect();
    values.sort_unstable();
    values.dedup();
    values
}

/// Subspaces `U_i` (as row bases in `F₂^k`, dimensions `u_i`) whose nonzero
/// vectors can be punctured from `sS_k`.
///
/// Pairwise disjoint choices are preferred; when none exists every nonzero
/// vector is allowed in at most `s` of the subspaces.
pub fn choose_subspaces(
    k: usize,
    s: usize,
    u: &[usize],
) -> Result<Vec<BitMatrix>, ConstructionError> {
    choose_subspaces_with_budget(k, s, u, DEFAULT_SUBSPACE_SEARCH_BUDGET)
}

pub fn choose_subspaces_with_budget(
    k: usize,
    s: usize,
    u: &[usize],
    budget: u64,
) -> Result<Vec<BitMatrix>, ConstructionError> {
    if let Some(&bad) = u.iter().find(|&&x| x == 0 || x >= k) {
        return Err(ConstructionError::InvalidParameters(format!(
            "subspace dimension {bad} outside 1..{k}"
        )));
    }
    if !belov_condition(s, k, u) {
        return Err(ConstructionError::HypothesisViolated(format!(
            "Belov condition: sum of the first min(s+1, p) exponents of {u:?} exceeds s·k = {}",
            s * k
        )));
    }
    if u.is_empty() {
        return Ok(Vec::new());
    }
    let mut candidates: Vec<Vec<(BitMatrix, Vec<usize>)>> = Vec::new();
    for &dim in u {
        let list = subspaces_of(k, dim)
            .map(|b| {
                let vals = subspace_values(&b);
                (b, vals)
            })
            .collect();
        candidates.push(list);
    }
    let mut caps = vec![1];
    if s > 1 {
        caps.push(s);
    }
    for cap in caps {
        let mut uses = vec![0usize; 1 << k];
        let mut picked = Vec::new();
        let mut nodes = 0u64;
        if backtrack(&candidates, cap, &mut uses, &mut picked, &mut nodes, budget) {
            return Ok(picked
                .into_iter()
                .zip(&candidates)
                .map(|(idx, list)| list[idx].0.clone())
                .collect());
        }
    }
    Err(ConstructionError::NoSubspaceChoice {
        k,
        s,
        u: u.to_vec(),
    })
}

fn backtrack(
    candidates: &[Vec<(BitMatrix, Vec<usize>)>],
    cap: usize,
    uses: &mut [usize],
    picked: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> bool {
    let level = picked.len();
    if level == candidates.len() {
        return true;
    }
    for (idx, (_, vals)) in candidates[level].iter().enumerate() {
        *nodes += 1;
        if *nodes > budget {
            return false;
        }
        if vals.iter().any(|&v| uses[v] >= cap) {
            continue;
        }
        for &v in vals {
            uses[v] += 1;
        }
        picked.push(idx);
        if backtrack(candidates, cap, uses, picked, nodes, budget) {
            return true;
        }
        picked.pop();
        for &v in vals {
            uses[v] -= 1;
        }
        if *nodes > budget {
            return false;
        }
    }
    false
}

/// Parameters of a Solomon-Stiffler code together with the chosen subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolomonStifflerSpec {
    pub k: usize,
    pub d: usize,
    pub s: usize,
    pub u: Vec<usize>,
    pub subspaces: Vec<BitMatrix>,
}

impl SolomonStifflerSpec {
    /// Decomposes `d` and picks subspaces automatically.
    pub fn new(k: usize, d: usize) -> Result<Self, ConstructionError> {
        if k < 1 || d < 1 {
            return Err(ConstructionError::InvalidParameters(format!(
                "need k ≥ 1 and d ≥ 1, got k={k}, d={d}"
            )));
        }
        let (s, u) = decompose_deficiency(k, d);
        let subspaces = choose_subspaces(k, s, &u)?;
        Ok(SolomonStifflerSpec {
            k,
            d,
            s,
            u,
            subspaces,
        })
    }

    /// Uses caller-supplied subspace bases; they must match the decomposition
    /// of `d` (in order) and respect the multiplicity limit `s`.
    pub fn with_subspaces(
        k: usize,
        d: usize,
        subspaces: Vec<BitMatrix>,
    ) -> Result<Self, ConstructionError> {
        if k < 1 || d < 1 {
            return Err(ConstructionError::InvalidParameters(format!(
                "need k ≥ 1 and d ≥ 1, got k={k}, d={d}"
            )));
        }
        let (s, u) = decompose_deficiency(k, d);
        if subspaces.len() != u.len() {
            return Err(ConstructionError::InvalidParameters(format!(
                "expected {} subspaces for exponents {u:?}, got {}",
                u.len(),
                subspaces.len()
            )));
        }
        let mut uses = vec![0usize; 1 << k];
        for (basis, &dim) in subspaces.iter().zip(&u) {
            if basis.n_cols() != k || basis.rank() != dim {
                return Err(ConstructionError::InvalidParameters(format!(
                    "subspace basis must have {k} columns and rank {dim}"
                )));
            }
            for v in subspace_values(basis) {
                uses[v] += 1;
                if uses[v] > s {
                    return Err(ConstructionError::InvalidParameters(format!(
                        "vector {} is used more than s = {s} times",
                        value_vector(k, v)
                    )));
                }
            }
        }
        Ok(SolomonStifflerSpec {
            k,
            d,
            s,
            u,
            subspaces,
        })
    }

    /// Expected length `s(2^k − 1) − Σ(2^(u_i) − 1)`.
    pub fn length(&self) -> usize {
        self.s * ((1 << self.k) - 1) - self.u.iter().map(|&x| (1usize << x) - 1).sum::<usize>()
    }

    /// True when the subspaces share no nonzero vector.
    pub fn pairwise_disjoint(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.subspaces
            .iter()
            .flat_map(subspace_values)
            .all(|v| seen.insert(v))
    }

    /// `G' = (U_1 | ⋯ | U_p)`
    pub fn anticode_matrix(&self) -> BitMatrix {
        self.subspaces
            .iter()
            .map(subspace_columns)
            .fold(BitMatrix::zeros(self.k, 0), |acc, m| {
                acc.concat_columns(&m).expect("equal row counts")
            })
    }
}

/// A validated Solomon-Stiffler code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolomonStifflerCode {
    pub spec: SolomonStifflerSpec,
    /// `(sS_k ∖ G')`, rows indexed by the message coordinates.
    pub generator: BitMatrix,
    pub anticode: BitMatrix,
    pub code: LinearCode,
}

impl SolomonStifflerCode {
    /// Checks `wt(xG) + wt(xG') = s·2^(k−1)` for every nonzero message `x`.
    pub fn anticode_identity_holds(&self) -> bool {
        let k = self.spec.k;
        let target = self.spec.s << (k - 1);
        (1u64..(1u64 << k)).all(|x| {
            let msg = BitVec::from_words(k, &[x]);
            let w = |m: &BitMatrix| {
                msg.ones_iter()
                    .fold(BitVec::zeros(m.n_cols()), |mut acc, r| {
                        acc.xor_assign(&m.row_vec(r));
                        acc
                    })
                    .weight()
            };
            w(&self.generator) + w(&self.anticode) == target
        })
    }
}

/// Builds `(sS_k ∖ (U_1|⋯|U_p))` and validates it is an `[n, k, d]` Griesmer code.
pub fn solomon_stiffler_code(
    spec: &SolomonStifflerSpec,
) -> Result<SolomonStifflerCode, ConstructionError> {
    let anticode = spec.anticode_matrix();
    let generator = repeated_simplex(spec.s, spec.k).remove_column_values(&anticode)?;
    let code = LinearCode::from_generator(&generator);
    let n = spec.length();
    if generator.n_cols() != n {
        return Err(ConstructionError::ValidationFailed(format!(
            "length {} instead of {n}",
            generator.n_cols()
        )));
    }
    if code.k() != spec.k {
        return Err(ConstructionError::ValidationFailed(format!(
            "rank collapsed to {} (expected {})",
            code.k(),
            spec.k
        )));
    }
    let d = code.min_distance()?;
    if d != spec.d {
        return Err(ConstructionError::ValidationFailed(format!(
            "minimum distance {d} instead of {}",
            spec.d
        )));
    }
    let g = griesmer_bound(spec.k, spec.d);
    if n != g {
        return Err(ConstructionError::ValidationFailed(format!(
            "length {n} does not meet the Griesmer bound {g}"
        )));
    }
    Ok(SolomonStifflerCode {
        spec: spec.clone(),
        generator,
        anticode,
        code,
    })
}

/// An LCP `(C, (σ(C))⊥)` built from a Solomon-Stiffler code `C`.
#[derive(Debug, Clone)]
pub struct SolomonStifflerLcp {
    pub ss: SolomonStifflerCode,
    pub certificate: LcpCertificate,
    pub c1: LinearCode,
    pub c2: LinearCode,
    pub security_parameter: usize,
}

/// Checks `s ≥ 2`, `k ≥ 2` and the Belov condition for `(k, d)`.
pub fn check_lcp_hypotheses(k: usize, d: usize) -> Result<(usize, Vec<usize>), ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::HypothesisViolated(format!(
            "k ≥ 2 fails (k = {k})"
        )));
    }
    if d < 1 {
        return Err(ConstructionError::InvalidParameters(
            "d must be positive".into(),
        ));
    }
    let (s, u) = decompose_deficiency(k, d);
    if s < 2 {
        return Err(ConstructionError::HypothesisViolated(format!(
            "s ≥ 2 fails (s = ⌈d/2^(k−1)⌉ = {s})"
        )));
    }
    if !belov_condition(s, k, &u) {
        return Err(ConstructionError::HypothesisViolated(format!(
            "Belov condition fails for s={s}, k={k}, u={u:?}"
        )));
    }
    Ok((s, u))
}

/// `[g(k,d), k]` LCP with security parameter `d` from a Solomon-Stiffler code.
pub fn ss_lcp(k: usize, d: usize) -> Result<SolomonStifflerLcp, ConstructionError> {
    check_lcp_hypotheses(k, d)?;
    ss_lcp_from_spec(&SolomonStifflerSpec::new(k, d)?)
}

pub fn ss_lcp_from_spec(
    spec: &SolomonStifflerSpec,
) -> Result<SolomonStifflerLcp, ConstructionError> {
    check_lcp_hypotheses(spec.k, spec.d)?;
    let ss = solomon_stiffler_code(spec)?;
    let c = &ss.code;
    if c.contains_all_one() {
        return Err(ConstructionError::ValidationFailed(
            "code contains the all-one vector".into(),
        ));
    }
    let certificate = lcppair::hull_shift_pair(c, 0)?.with_security_parameter(c, c)?;
    let c2 = c.permute(&certificate.sigma)?.dual();
    let security_parameter = certificate.security_parameter.expect("attached just above");
    if security_parameter != spec.d {
        return Err(ConstructionError::ValidationFailed(format!(
            "security parameter {security_parameter} instead of {}",
            spec.d
        )));
    }
    Ok(SolomonStifflerLcp {
        c1: c.clone(),
        c2,
        ss,
        certificate,
        security_parameter,
    })
}

/// Parses `k=…,d=…`.
pub fn parse_kd(text: &str) -> Result<(usize, usize), ConstructionError> {
    let mut k = None;
    let mut d = None;
    for part in text.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            ConstructionError::InvalidParameters(format!("expected key=value, got {part:?}"))
        })?;
        let value: usize = value.trim().parse().map_err(|_| {
            ConstructionError::InvalidParameters(format!("{value:?} is not a count"))
        })?;
        match key.trim() {
            "k" => k = Some(value),
            "d" => d = Some(value),
            other => {
                return Err(ConstructionError::InvalidParameters(format!(
                    "unknown key {other:?}"
                )))
            }
        }
    }
    match (k, d) {
        (Some(k), Some(d)) => Ok((k, d)),
        _ => Err(ConstructionError::InvalidParameters(
            "both k and d are required".into(),
        )),
    }
}

/// Splits a text into matrix blocks separated by blank lines.
pub fn parse_matrix_blocks(text: &str) -> Result<Vec<BitMatrix>, MatrixError> {
    let mut blocks = Vec::new();
    let mut current = String::new();
    for line in text.lines().chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if current.lines().any(|l| !l.trim().starts_with('#')) {
                blocks.push(crate::gf2::parse_matrix(&current)?);
            }
            current.clear();
        } else {
            current.push_str(line);
            current.push('\n');
        }
    }
    Ok(blocks)
}
