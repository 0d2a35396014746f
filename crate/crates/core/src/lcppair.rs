//! Permutations that steer `dim(C1 ∩ (σ(C2))⊥)` to a chosen value.
//!
//! For binary `[n, k]` codes with `h = dim(C1 ∩ C2⊥) = dim(C2 ∩ C1⊥)`:
//!
//! * every `1 ≤ ℓ ≤ h` is reachable with `h − ℓ` transpositions, each lowering
//!   the dimension by exactly one ([`reduce_once`]);
//! * `ℓ = 0` (a linear complementary pair) is reachable exactly when the
//!   all-one vector lies in neither `C1 ∩ C2⊥` nor `C2 ∩ C1⊥`; the last step is
//!   a transposition `(i, j)` separating both remaining generators
//!   ([`final_step`]);
//! * prepending a zero coordinate to both codes always removes the obstruction
//!   ([`build_lcp_padded`]).
//!
//! Each transposition comes from the block structure of a normalised pair of
//! generators ([`standard_form`]). Every candidate is re-checked numerically
//! before it is accepted, and every certificate is re-verified from scratch.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::codes::{security_parameter, CodeError, LinearCode};
use crate::gf2::{factorial, BitMatrix, BitVec, MatrixError, Permutation};
use crate::par::{self, Strategy};

/// Largest length the permutation oracle will sweep exhaustively.
pub const MAX_EXHAUSTIVE_LENGTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LcpError {
    #[error("codes have different dimensions ({0} vs {1})")]
    UnequalDimensions(usize, usize),
    #[error(
        "no permutation gives an LCP: all-one vector in C1 ∩ C2⊥: {one_in_c1_meet_c2_dual}, \
         in C2 ∩ C1⊥: {one_in_c2_meet_c1_dual} (dim C1 ∩ C2⊥ = {dim_c1_meet_c2_dual}, \
         dim C2 ∩ C1⊥ = {dim_c2_meet_c1_dual})"
    )]
    ConditionViolated {
        one_in_c1_meet_c2_dual: bool,
        one_in_c2_meet_c1_dual: bool,
        dim_c1_meet_c2_dual: usize,
        dim_c2_meet_c1_dual: usize,
    },
    #[error("target dimension {target} exceeds the current intersection dimension {current}")]
    TargetTooLarge { target: usize, current: usize },
    #[error("intersection dimension is {0}, this step needs at least {1}")]
    DimensionTooSmall(usize, usize),
    #[error("final step needs dimension 1, found {0}")]
    NotFinalStep(usize),
    #[error("final step precondition failed: C1 ∩ C2⊥ generator is all-one: {a_is_one}, C2 ∩ C1⊥ generator is all-one: {b_is_one}")]
    FinalStepPrecondition { a_is_one: bool, b_is_one: bool },
    #[error("length {n} is too large for an exhaustive permutation sweep (max {max})")]
    TooLargeForExhaustive { n: usize, max: usize },
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("malformed certificate: {0}")]
    Certificate(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

impl From<MatrixError> for LcpError {
    fn from(e: MatrixError) -> Self {
        LcpError::Code(CodeError::Matrix(e))
    }
}

/// Which branch of the reduction produced a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// Two of the first `h` columns of the `C1` block differ.
    Case1,
    /// The leading `h × h` block of the `C1` block is zero.
    Subcase2_1,
    /// The leading block is nonzero with all columns equal.
    Subcase2_2,
    /// Dimension one to zero.
    FinalStep,
    /// Cyclic shift of the leading hull coordinates.
    HullShift,
}

impl StepKind {
    fn label(self) -> &'static str {
        match self {
            StepKind::Case1 => "Case1",
            StepKind::Subcase2_1 => "Subcase2_1",
            StepKind::Subcase2_2 => "Subcase2_2",
            StepKind::FinalStep => "FinalStep",
            StepKind::HullShift => "HullShift",
        }
    }

    fn from_label(s: &str) -> Option<Self> {
        Some(match s {
            "Case1" => StepKind::Case1,
            "Subcase2_1" => StepKind::Subcase2_1,
            "Subcase2_2" => StepKind::Subcase2_2,
            "FinalStep" => StepKind::FinalStep,
            "HullShift" => StepKind::HullShift,
            _ => return None,
        })
    }
}

/// Coordinate move of one step, in the original coordinates of `C2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    Swap(usize, usize),
    /// The coordinate at `positions[m-1]` moves to `positions[0]`, and the one
    /// at `positions[t]` moves to `positions[t+1]`.
    Cycle(Vec<usize>),
}

impl Move {
    pub fn to_permutation(&self, n: usize) -> Result<Permutation, MatrixError> {
        match self {
            Move::Swap(i, j) => Permutation::transposition(n, *i, *j),
            Move::Cycle(pos) => {
                let mut images: Vec<usize> = (0..n).collect();
                let m = pos.len();
                for t in 0..m {
                    images[pos[t]] = pos[(t + 1) % m];
                }
                Permutation::from_images(images)
            }
        }
    }
}

/// Something the reduction noticed that its case analysis did not predict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Anomaly {
    /// The `i` picked for a Subcase 2 swap was not among the first two coordinates.
    ColumnBeyondSecond,
    /// The case analysis failed numerically; the swap came from a full scan.
    FallbackScan,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub mv: Move,
    pub dim_before: usize,
    pub dim_after: usize,
    pub anomaly: Option<Anomaly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpCertificate {
    pub n: usize,
    pub k: usize,
    /// Both codes were zero-extended by one leading coordinate before the search.
    pub padded: bool,
    /// `permute(C2, sigma)` is the code whose dual meets `C1` in `final_dim` dimensions.
    pub sigma: Permutation,
    pub trace: Vec<ReductionStep>,
    pub target_dim: usize,
    pub final_dim: usize,
    pub verified: bool,
    pub security_parameter: Option<usize>,
}

impl LcpCertificate {
    /// Recomputes `dim(C1 ∩ (σ(C2))⊥)` from the generators and `σ` alone.
    /// The inputs are the unpadded codes for a padded certificate.
    pub fn check(&self, c1: &LinearCode, c2: &LinearCode) -> Result<bool, LcpError> {
        let (c1, c2) = if self.padded {
            (c1.zero_extend(), c2.zero_extend())
        } else {
            (c1.clone(), c2.clone())
        };
        if c1.n() != self.n || c2.n() != self.n || self.sigma.len() != self.n {
            return Ok(false);
        }
        Ok(recomputed_dim(&c1, &c2, &self.sigma)? == self.final_dim)
    }

    /// Attaches `min{d(C1), d((σ(C2))⊥⊥)}` for the (possibly padded) pair.
    pub fn with_security_parameter(
        mut self,
        c1: &LinearCode,
        c2: &LinearCode,
    ) -> Result<Self, LcpError> {
        let (c1, c2) = if self.padded {
            (c1.zero_extend(), c2.zero_extend())
        } else {
            (c1.clone(), c2.clone())
        };
        let partner = c2.permute(&self.sigma)?.dual();
        self.security_parameter = Some(security_parameter(&c1, &partner)?);
        Ok(self)
    }

    /// Serialises as `key = value` lines. Positions are written 1-based.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# binary LCP certificate\n");
        let mut kv = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        kv("n", self.n.to_string());
        kv("k", self.k.to_string());
        kv("padded", self.padded.to_string());
        kv("target_dim", self.target_dim.to_string());
        kv("final_dim", self.final_dim.to_string());
        kv("verified", self.verified.to_string());
        kv("sigma", join_one_based(self.sigma.images()));
        if let Some(sp) = self.security_parameter {
            kv("security_parameter", sp.to_string());
        }
        kv("steps", self.trace.len().to_string());
        for (idx, step) in self.trace.iter().enumerate() {
            kv(&format!("step.{}", idx + 1), format_step(step));
        }
        out
    }

    /// Parses [`LcpCertificate::to_text`] output; key order does not matter.
    pub fn from_text(text: &str) -> Result<Self, LcpError> {
        let bad = |m: String| LcpError::Certificate(m);
        let mut fields = BTreeMap::new();
        let mut steps = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("line {}: expected key = value", no + 1)))?;
            let (key, value) = (key.trim(), value.trim().to_string());
            if let Some(idx) = key.strip_prefix("step.") {
                let idx: usize = idx
                    .parse()
                    .map_err(|_| bad(format!("bad step key {key}")))?;
                steps.insert(idx, parse_step(&value).map_err(bad)?);
            } else {
                fields.insert(key.to_string(), value);
            }
        }
        let get = |k: &str| {
            fields
                .get(k)
                .ok_or_else(|| bad(format!("missing field {k}")))
        };
        let num = |k: &str| -> Result<usize, LcpError> {
            get(k)?
                .parse()
                .map_err(|_| bad(format!("field {k} is not a count")))
        };
        let flag = |k: &str| -> Result<bool, LcpError> {
            match fields.get(k).map(String::as_str) {
                None | Some("false") => Ok(false),
                Some("true") => Ok(true),
                Some(v) => Err(bad(format!("field {k} is not a boolean: {v}"))),
            }
        };
        let images = parse_one_based(get("sigma")?).map_err(bad)?;
        let sigma = Permutation::from_images(images).map_err(|e| bad(e.to_string()))?;
        let n = num("n")?;
        if sigma.len() != n {
            return Err(bad(format!("sigma has {} entries, n = {n}", sigma.len())));
        }
        if let Some(declared) = fields.get("steps") {
            if declared.parse::<usize>().ok() != Some(steps.len()) {
                return Err(bad(format!(
                    "declared {declared} steps, found {}",
                    steps.len()
                )));
            }
        }
        let final_dim = num("final_dim")?;
        Ok(LcpCertificate {
            n,
            k: num("k")?,
            padded: flag("padded")?,
            sigma,
            trace: steps.into_values().collect(),
            target_dim: fields
                .get("target_dim")
                .map(|_| num("target_dim"))
                .transpose()?
                .unwrap_or(final_dim),
            final_dim,
            verified: flag("verified")?,
            security_parameter: fields
                .get("security_parameter")
                .map(|_| num("security_parameter"))
                .transpose()?,
        })
    }
}

impl fmt::Display for LcpCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn join_one_based(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| (x + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_one_based(s: &str) -> Result<Vec<usize>, String> {
    s.split_whitespace()
        .map(|t| match t.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(format!("bad 1-based position {t:?}")),
        })
        .collect()
}

fn format_step(step: &ReductionStep) -> String {
    let mv = match &step.mv {
        Move::Swap(i, j) => format!("swap {}", join_one_based(&[*i, *j])),
        Move::Cycle(pos) => format!("cycle {}", join_one_based(pos)),
    };
    let mut s = format!(
        "{} {} dim {} {}",
        step.kind.label(),
        mv,
        step.dim_before,
        step.dim_after
    );
    match step.anomaly {
        Some(Anomaly::ColumnBeyondSecond) => s.push_str(" note column-beyond-second"),
        Some(Anomaly::FallbackScan) => s.push_str(" note fallback-scan"),
        None => {}
    }
    s
}

fn parse_step(s: &str) -> Result<ReductionStep, String> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    let err = || format!("malformed step {s:?}");
    let kind = StepKind::from_label(toks.first().ok_or_else(err)?).ok_or_else(err)?;
    let dim_at = toks.iter().position(|&t| t == "dim").ok_or_else(err)?;
    let positions = parse_one_based(&toks[2..dim_at].join(" "))?;
    let mv = match *toks.get(1).ok_or_else(err)? {
        "swap" if positions.len() == 2 => Move::Swap(positions[0], positions[1]),
        "cycle" if !positions.is_empty() => Move::Cycle(positions),
        _ => return Err(err()),
    };
    let dim = |i: usize| -> Result<usize, String> {
        toks.get(dim_at + i)
            .and_then(|t| t.parse().ok())
            .ok_or_else(err)
    };
    let anomaly = match toks.get(dim_at + 3..) {
        Some(["note", "column-beyond-second"]) => Some(Anomaly::ColumnBeyondSecond),
        Some(["note", "fallback-scan"]) => Some(Anomaly::FallbackScan),
        Some([]) | None => None,
        _ => return Err(err()),
    };
    Ok(ReductionStep {
        kind,
        mv,
        dim_before: dim(1)?,
        dim_after: dim(2)?,
        anomaly,
    })
}

/// `dim(C1 ∩ (σ(C2))⊥)` through the explicit intersection, independent of any trace.
pub fn recomputed_dim(
    c1: &LinearCode,
    c2: &LinearCode,
    sigma: &Permutation,
) -> Result<usize, LcpError> {
    Ok(c1.intersection(&c2.permute(sigma)?.dual())?.k())
}

fn check_pair(c1: &LinearCode, c2: &LinearCode) -> Result<(), LcpError> {
    if c1.n() != c2.n() {
        return Err(CodeError::LengthMismatch(c1.n(), c2.n()).into());
    }
    if c1.k() != c2.k() {
        return Err(LcpError::UnequalDimensions(c1.k(), c2.k()));
    }
    Ok(())
}

/// Both codes after the coordinate permutation `pi`, with generators in block form:
///
/// ```text
/// g2 = ( I_h  A2 )    g1 = ( A1  B1 )
///      (  O   B2 )         ( D1  E1 )
/// ```
///
/// The top `h` rows of `g2` span `π(C2) ∩ π(C1)⊥`, the top `h` rows of `g1`
/// span `π(C1) ∩ π(C2)⊥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    pub pi: Permutation,
    pub g1: BitMatrix,
    pub g2: BitMatrix,
    pub h: usize,
}

impl StandardForm {
    /// Column `c` of the top block of `g1`, as a length-`h` vector.
    fn top1_col(&self, c: usize) -> BitVec {
        top_column(&self.g1, self.h, c)
    }

    fn top2_col(&self, c: usize) -> BitVec {
        top_column(&self.g2, self.h, c)
    }
}

fn top_column(m: &BitMatrix, h: usize, c: usize) -> BitVec {
    let mut v = BitVec::zeros(h);
    for r in 0..h {
        if m.get(r, c) {
            v.set(r, true);
        }
    }
    v
}

/// Brings `(C1, C2)` into block form. Requires `dim(C2 ∩ C1⊥) ≥ 1`.
pub fn standard_form(c1: &LinearCode, c2: &LinearCode) -> Result<StandardForm, LcpError> {
    check_pair(c1, c2)?;
    let n = c1.n();
    let k = c1.k();
    let w2 = c2.intersection(&c1.dual())?;
    let h = w2.k();
    if h == 0 {
        return Err(LcpError::DimensionTooSmall(0, 1));
    }

    // RREF pivots are the lexicographically first independent column set.
    let (_, pivots) = w2.generator().rref();
    let mut images = vec![usize::MAX; n];
    for (t, &p) in pivots.iter().enumerate() {
        images[p] = t;
    }
    for (next, img) in (h..).zip(images.iter_mut().filter(|x| **x == usize::MAX)) {
        *img = next;
    }
    let pi = Permutation::from_images(images)?;

    let top2 = w2.generator().apply_permutation(&pi)?;
    let pc2 = c2.permute(&pi)?;
    let mut rest2 = BitMatrix::zeros(0, n);
    for r in 0..k {
        let mut row = pc2.generator().row_vec(r);
        for t in 0..h {
            if row.get(t) {
                row.xor_assign(&top2.row_vec(t));
            }
        }
        rest2.push_row(&row)?;
    }
    let (bottom2, _) = rest2.rref();
    if bottom2.n_rows() != k - h {
        return Err(LcpError::InternalConsistency(format!(
            "complement block of C2 has {} rows, expected {}",
            bottom2.n_rows(),
            k - h
        )));
    }
    let g2 = top2.stack(&bottom2)?;

    let pc1 = c1.permute(&pi)?;
    let w1 = pc1.intersection(&pc2.dual())?;
    if w1.k() != h {
        return Err(LcpError::InternalConsistency(format!(
            "dim(C1 ∩ C2⊥) = {} but dim(C2 ∩ C1⊥) = {h}",
            w1.k()
        )));
    }
    let g1 = extend_basis(w1.generator(), pc1.generator())?;

    let sf = StandardForm { pi, g1, g2, h };
    let top1 = sf.g1.select_rows(&(0..h).collect::<Vec<_>>())?;
    let top2 = sf.g2.select_rows(&(0..h).collect::<Vec<_>>())?;
    let ok = sf.g1.rank() == k
        && sf.g2.rank() == k
        && top2.mul_transpose(&sf.g1)?.is_zero()
        && sf.g2.mul_transpose(&top1)?.is_zero()
        && (0..h).all(|r| (0..h).all(|c| sf.g2.get(r, c) == (r == c)))
        && (h..k).all(|r| (0..h).all(|c| !sf.g2.get(r, c)));
    if !ok {
        return Err(LcpError::InternalConsistency(
            "standard form failed its block checks".into(),
        ));
    }
    Ok(sf)
}

/// `base` followed by rows of `span` that enlarge the row space.
fn extend_basis(base: &BitMatrix, span: &BitMatrix) -> Result<BitMatrix, LcpError> {
    let mut out = base.clone();
    let mut rank = out.rank();
    for r in 0..span.n_rows() {
        let mut candidate = out.clone();
        candidate.push_row(&span.row_vec(r))?;
        let cr = candidate.rank();
        if cr > rank {
            out = candidate;
            rank = cr;
        }
    }
    Ok(out)
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

/// One transposition lowering `dim(C1 ∩ C2⊥)` from `h ≥ 2` to `h − 1`.
///
/// The returned permutation acts on `C2` in its original coordinates.
pub fn reduce_once(
    c1: &LinearCode,
    c2: &LinearCode,
) -> Result<(Permutation, ReductionStep), LcpError> {
    check_pair(c1, c2)?;
    let h = c1.dim_meet_dual(c2)?;
    if h < 2 {
        return Err(LcpError::DimensionTooSmall(h, 2));
    }
    let sf = standard_form(c1, c2)?;
    let n = c1.n();
    let k = c1.k();

    let (kind, (i, j), mut anomaly) = pick_reduction_swap(&sf, n);

    // Expected rank after the swap, in standard-form coordinates.
    let tau = Permutation::transposition(n, i, j)?;
    let swapped = sf.g2.apply_permutation(&tau)?;
    let predicted_ok = swapped.mul_transpose(&sf.g1)?.rank() == k - h + 1;

    let back = sf.pi.inverse();
    let (oi, oj) = ordered(back.apply(i), back.apply(j));
    let mut swap = Permutation::transposition(n, oi, oj)?;
    let mut pair = (oi, oj);
    if !predicted_ok || c1.dim_meet_dual(&c2.permute(&swap)?)? != h - 1 {
        let found = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find_map(|(a, b)| {
                let t = Permutation::transposition(n, a, b).ok()?;
                let d = c1.dim_meet_dual(&c2.permute(&t).ok()?).ok()?;
                (d == h - 1).then_some((t, (a, b)))
            });
        let (t, p) = found.ok_or_else(|| {
            LcpError::InternalConsistency(format!("no transposition lowers dimension {h}"))
        })?;
        swap = t;
        pair = p;
        anomaly = Some(Anomaly::FallbackScan);
    }
    Ok((
        swap,
        ReductionStep {
            kind,
            mv: Move::Swap(pair.0, pair.1),
            dim_before: h,
            dim_after: h - 1,
            anomaly,
        },
    ))
}

/// Case analysis on the standard form. Returns positions in standard-form coordinates.
fn pick_reduction_swap(sf: &StandardForm, n: usize) -> (StepKind, (usize, usize), Option<Anomaly>) {
    let h = sf.h;
    let a1_cols: Vec<BitVec> = (0..h).map(|c| sf.top1_col(c)).collect();

    for i in 0..h {
        for j in i + 1..h {
            if a1_cols[i] != a1_cols[j] {
                return (StepKind::Case1, (i, j), None);
            }
        }
    }

    // All columns of A1 equal some d.
    let d = &a1_cols[0];
    let kind = if d.is_zero() {
        StepKind::Subcase2_1
    } else {
        StepKind::Subcase2_2
    };
    for j in h..n {
        if sf.top1_col(j) == *d {
            continue;
        }
        let a2_col = sf.top2_col(j);
        if let Some(i) = (0..h).find(|&i| a2_col != BitVec::unit(h, i)) {
            let anomaly = (i >= 2).then_some(Anomaly::ColumnBeyondSecond);
            return (kind, (i, j), anomaly);
        }
    }
    // Unreachable for a valid standard form; the caller falls back to a scan.
    (kind, (0, 1), Some(Anomaly::FallbackScan))
}

/// The transposition taking `dim(C1 ∩ C2⊥)` from 1 to 0.
pub fn final_step(
    c1: &LinearCode,
    c2: &LinearCode,
) -> Result<(Permutation, ReductionStep), LcpError> {
    check_pair(c1, c2)?;
    let meet1 = c1.intersection(&c2.dual())?;
    if meet1.k() != 1 {
        return Err(LcpError::NotFinalStep(meet1.k()));
    }
    let meet2 = c2.intersection(&c1.dual())?;
    let a = meet1.generator().row_vec(0);
    let b = meet2.generator().row_vec(0);
    if a.is_all_one() || b.is_all_one() {
        return Err(LcpError::FinalStepPrecondition {
            a_is_one: a.is_all_one(),
            b_is_one: b.is_all_one(),
        });
    }
    let n = c1.n();
    let (i, j) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| a.get(i) != a.get(j) && b.get(i) != b.get(j))
        .ok_or_else(|| {
            LcpError::InternalConsistency("no coordinate pair separates both generators".into())
        })?;
    let tau = Permutation::transposition(n, i, j)?;
    if c1.dim_meet_dual(&c2.permute(&tau)?)? != 0 {
        return Err(LcpError::InternalConsistency(format!(
            "final transposition ({i}, {j}) did not reach dimension 0"
        )));
    }
    Ok((
        tau,
        ReductionStep {
            kind: StepKind::FinalStep,
            mv: Move::Swap(i, j),
            dim_before: 1,
            dim_after: 0,
            anomaly: None,
        },
    ))
}

/// Whether the all-one vector blocks an LCP for `(C1, C2)`; `Ok` when it does not.
pub fn check_lcp_condition(c1: &LinearCode, c2: &LinearCode) -> Result<(), LcpError> {
    check_pair(c1, c2)?;
    let one_in_c1_meet_c2_dual = c1.contains_all_one() && c2.is_even_like();
    let one_in_c2_meet_c1_dual = c2.contains_all_one() && c1.is_even_like();
    if one_in_c1_meet_c2_dual || one_in_c2_meet_c1_dual {
        return Err(LcpError::ConditionViolated {
            one_in_c1_meet_c2_dual,
            one_in_c2_meet_c1_dual,
            dim_c1_meet_c2_dual: c1.dim_meet_dual(c2)?,
            dim_c2_meet_c1_dual: c2.dim_meet_dual(c1)?,
        });
    }
    Ok(())
}

fn finish(
    c1: &LinearCode,
    c2: &LinearCode,
    sigma: Permutation,
    trace: Vec<ReductionStep>,
    target: usize,
) -> Result<LcpCertificate, LcpError> {
    let final_dim = recomputed_dim(c1, c2, &sigma)?;
    let verified = final_dim == target;
    if !verified {
        return Err(LcpError::InternalConsistency(format!(
            "certificate reaches dimension {final_dim}, target was {target}"
        )));
    }
    Ok(LcpCertificate {
        n: c1.n(),
        k: c1.k(),
        padded: false,
        sigma,
        trace,
        target_dim: target,
        final_dim,
        verified,
        security_parameter: None,
    })
}

/// Applies reductions from the current dimension down to `target`.
fn descend(c1: &LinearCode, c2: &LinearCode, target: usize) -> Result<LcpCertificate, LcpError> {
    let n = c1.n();
    let mut sigma = Permutation::identity(n);
    let mut current = c2.clone();
    let mut trace = Vec::new();
    let mut h = c1.dim_meet_dual(c2)?;
    while h > target.max(1) {
        let (tau, step) = reduce_once(c1, &current)?;
        current = current.permute(&tau)?;
        sigma = tau.compose(&sigma)?;
        h = step.dim_after;
        trace.push(step);
    }
    if target == 0 && h == 1 {
        let (tau, step) = final_step(c1, &current)?;
        sigma = tau.compose(&sigma)?;
        trace.push(step);
    }
    finish(c1, c2, sigma, trace, target)
}

/// A permutation `σ` making `(C1, (σ(C2))⊥)` an LCP, if one exists.
pub fn build_lcp(c1: &LinearCode, c2: &LinearCode) -> Result<LcpCertificate, LcpError> {
    check_lcp_condition(c1, c2)?;
    descend(c1, c2, 0)
}

/// A permutation `σ` with `dim(C1 ∩ (σ(C2))⊥) = ell`.
pub fn ell_pair(c1: &LinearCode, c2: &LinearCode, ell: usize) -> Result<LcpCertificate, LcpError> {
    check_pair(c1, c2)?;
    let h = c1.dim_meet_dual(c2)?;
    if ell > h {
        return Err(LcpError::TargetTooLarge {
            target: ell,
            current: h,
        });
    }
    if ell == 0 {
        return build_lcp(c1, c2);
    }
    descend(c1, c2, ell)
}

/// LCP for `({0} × C1, {0} × C2)`. Never blocked by the all-one vector.
pub fn build_lcp_padded(c1: &LinearCode, c2: &LinearCode) -> Result<LcpCertificate, LcpError> {
    check_pair(c1, c2)?;
    let mut cert = build_lcp(&c1.zero_extend(), &c2.zero_extend())?;
    cert.padded = true;
    Ok(cert)
}

/// `rank(G (π_m(G))ᵀ)` for the standard-form generator `G` of a single code,
/// where `π_m` cycles the first `m` coordinates.
pub fn shift_rank(sf: &StandardForm, m: usize) -> Result<usize, LcpError> {
    let pm = Permutation::cycle_to_front(sf.g2.n_cols(), m)?;
    Ok(sf.g2.mul_transpose(&sf.g2.apply_permutation(&pm)?)?.rank())
}

/// A permutation `σ` with `dim(C ∩ (σ(C))⊥) = ell` built from a cyclic shift
/// of the leading hull coordinates (plus one final transposition for `ell = 0`).
pub fn hull_shift_pair(c: &LinearCode, ell: usize) -> Result<LcpCertificate, LcpError> {
    let n = c.n();
    let k = c.k();
    let h = c.dim_meet_dual(c)?;
    if ell > h {
        return Err(LcpError::TargetTooLarge {
            target: ell,
            current: h,
        });
    }
    if ell == 0 {
        check_lcp_condition(c, c)?;
    }
    let mut sigma = Permutation::identity(n);
    let mut trace = Vec::new();
    let shift_target = ell.max(1);
    if h > shift_target {
        let sf = standard_form(c, c)?;
        let m = h - shift_target + 1;
        let rank = shift_rank(&sf, m)?;
        if k - rank != shift_target {
            return Err(LcpError::InternalConsistency(format!(
                "cyclic shift of length {m} gives rank {rank}, expected {}",
                k - shift_target
            )));
        }
        // π⁻¹ ∘ π_m ∘ π, expressed on the original coordinates.
        let back = sf.pi.inverse();
        let positions: Vec<usize> = (0..m).map(|t| back.apply(t)).collect();
        let mv = Move::Cycle(positions);
        sigma = mv.to_permutation(n)?;
        trace.push(ReductionStep {
            kind: StepKind::HullShift,
            mv,
            dim_before: h,
            dim_after: shift_target,
            anomaly: None,
        });
    }
    if ell == 0 && h >= 1 {
        let (tau, step) = final_step(c, &c.permute(&sigma)?)?;
        sigma = tau.compose(&sigma)?;
        trace.push(step);
    }
    finish(c, c, sigma, trace, ell)
}

/// How [`exists_permutation_oracle`] covers the permutation group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// All `n!` permutations, `n ≤ MAX_EXHAUSTIVE_LENGTH`.
    Exhaustive,
    /// Uniform random permutations from a seeded stream.
    Sampled { samples: u64, seed: u64 },
}

/// Brute-force search for `π` with `dim(C1 ∩ (π(C2))⊥) = ell`.
///
/// Exhaustive mode returns the witness that comes first in lexicographic
/// order of image lists, whatever the strategy.
pub fn exists_permutation_oracle(
    c1: &LinearCode,
    c2: &LinearCode,
    ell: usize,
    mode: OracleMode,
    strategy: Strategy,
) -> Result<Option<Permutation>, LcpError> {
    if c1.n() != c2.n() {
        return Err(CodeError::LengthMismatch(c1.n(), c2.n()).into());
    }
    let n = c1.n();
    let g1 = c1.generator();
    let g2 = c2.generator();
    let hits = |p: &Permutation| -> bool {
        let pg2 = g2.apply_permutation(p).expect("permutation has length n");
        let rank = g1.mul_transpose(&pg2).expect("equal lengths").rank();
        c1.k() - rank == ell
    };
    match mode {
        OracleMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_LENGTH {
                return Err(LcpError::TooLargeForExhaustive {
                    n,
                    max: MAX_EXHAUSTIVE_LENGTH,
                });
            }
            Ok(par::find_first(strategy, 0..factorial(n), |r| {
                let p = Permutation::unrank(n, r);
                hits(&p).then_some(p)
            }))
        }
        OracleMode::Sampled { samples, seed } => Ok(par::find_first(strategy, 0..samples, |t| {
            let p = sampled_permutation(n, seed, t);
            hits(&p).then_some(p)
        })),
    }
}

/// The `t`-th permutation of the stream seeded by `seed`.
pub fn sampled_permutation(n: usize, seed: u64, t: u64) -> Permutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(&mut rng);
    Permutation::from_images(images).expect("shuffle of 0..n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(rows: &[&str]) -> LinearCode {
        LinearCode::from_generator(&BitMatrix::from_row_strs(rows).unwrap())
    }

    fn even_weight(n: usize) -> LinearCode {
        LinearCode::from_generator(&BitMatrix::from_rows(n, &[BitVec::ones(n)]).unwrap()).dual()
    }

    fn ext_hamming() -> LinearCode {
        code(&["10000111", "01001011", "00101101", "00011110"])
    }

    #[test]
    fn full_hull_standard_form() {
        let c = ext_hamming();
        assert_eq!(c.hull(), c);
        let sf = standard_form(&c, &c).unwrap();
        assert_eq!(sf.h, 4);
        for r in 0..4 {
            for col in 0..4 {
                assert_eq!(sf.g2.get(r, col), r == col);
            }
        }
    }

    #[test]
    fn standard_form_needs_nonzero_meet() {
        // [2,1] code spanned by 10 is LCD.
        let c = code(&["10"]);
        assert_eq!(
            standard_form(&c, &c),
            Err(LcpError::DimensionTooSmall(0, 1))
        );
    }

    #[test]
    fn reduce_once_on_self_dual_code() {
        let c = ext_hamming();
        let (tau, step) = reduce_once(&c, &c).unwrap();
        assert_eq!(step.dim_before, 4);
        assert_eq!(c.dim_meet_dual(&c.permute(&tau).unwrap()).unwrap(), 3);
        assert!(step.anomaly.is_none());
    }

    #[test]
    fn reduce_once_rejects_small_h() {
        let c = code(&["1100"]);
        // h = 1 here
        assert_eq!(c.dim_meet_dual(&c).unwrap(), 1);
        assert_eq!(reduce_once(&c, &c), Err(LcpError::DimensionTooSmall(1, 2)));
    }

    #[test]
    fn even_weight_obstruction() {
        let c = even_weight(4);
        match build_lcp(&c, &c) {
            Err(LcpError::ConditionViolated {
                one_in_c1_meet_c2_dual,
                one_in_c2_meet_c1_dual,
                dim_c1_meet_c2_dual,
                dim_c2_meet_c1_dual,
            }) => {
                assert!(one_in_c1_meet_c2_dual && one_in_c2_meet_c1_dual);
                assert_eq!(dim_c1_meet_c2_dual, dim_c2_meet_c1_dual);
            }
            other => panic!("unexpected {other:?}"),
        }
        let padded = build_lcp_padded(&c, &c).unwrap();
        assert!(padded.padded && padded.verified);
        assert_eq!((padded.n, padded.final_dim), (5, 0));
        assert!(padded.check(&c, &c).unwrap());
    }

    #[test]
    fn unequal_dimensions_rejected() {
        let a = code(&["1100", "0011"]);
        let b = code(&["1111"]);
        assert_eq!(build_lcp(&a, &b), Err(LcpError::UnequalDimensions(2, 1)));
    }

    #[test]
    fn ell_pair_identity_at_current_dim() {
        let c = ext_hamming();
        let cert = ell_pair(&c, &c, 4).unwrap();
        assert!(cert.sigma.is_identity() && cert.trace.is_empty());
        assert_eq!(
            ell_pair(&c, &c, 5),
            Err(LcpError::TargetTooLarge {
                target: 5,
                current: 4
            })
        );
    }

    #[test]
    fn final_step_reports_all_one_generator() {
        // C = {0, 1111}: C ∩ C⊥ = C, generator all-one.
        let c = code(&["1111"]);
        assert_eq!(
            final_step(&c, &c),
            Err(LcpError::FinalStepPrecondition {
                a_is_one: true,
                b_is_one: true
            })
        );
    }

    #[test]
    fn final_step_with_equal_generators() {
        let c = code(&["1100"]);
        let (tau, step) = final_step(&c, &c).unwrap();
        assert_eq!(step.mv, Move::Swap(0, 2));
        assert_eq!(c.dim_meet_dual(&c.permute(&tau).unwrap()).unwrap(), 0);
    }

    #[test]
    fn cycle_move_matches_cycle_to_front() {
        let mv = Move::Cycle(vec![0, 1, 2]);
        assert_eq!(
            mv.to_permutation(5).unwrap(),
            Permutation::cycle_to_front(5, 3).unwrap()
        );
    }

    #[test]
    fn certificate_text_round_trip() {
        let c = ext_hamming();
        let cert = ell_pair(&c, &c, 1)
            .unwrap()
            .with_security_parameter(&c, &c)
            .unwrap();
        let text = cert.to_text();
        assert_eq!(LcpCertificate::from_text(&text).unwrap(), cert);
        // shuffled key order parses the same
        let mut lines: Vec<&str> = text.lines().collect();
        lines.reverse();
        assert_eq!(LcpCertificate::from_text(&lines.join("\n")).unwrap(), cert);
        assert!(LcpCertificate::from_text("n = 3\n").is_err());
    }

    #[test]
    fn oracle_rejects_long_codes() {
        let c = LinearCode::full(9);
        assert!(matches!(
            exists_permutation_oracle(&c, &c, 0, OracleMode::Exhaustive, Strategy::Sequential),
            Err(LcpError::TooLargeForExhaustive { n: 9, .. })
        ));
    }

    #[test]
    fn oracle_finds_identity_first() {
        let c = ext_hamming();
        let p = exists_permutation_oracle(&c, &c, 4, OracleMode::Exhaustive, Strategy::default())
            .unwrap()
            .unwrap();
        assert!(p.is_identity());
    }
}
