//! Exhaustive and sampled searches over the `k`-dimensional subspaces of `F₂ⁿ`.
//!
//! Subspaces are visited through their RREF generators: pivot sets in
//! colexicographic order, and inside a pivot set the free entries counting up
//! as a binary number. Each pivot set is an independent block, which is the
//! unit of parallel work; per-block results are merged in block order so
//! every report is the same whatever the schedule.
//!
//! Fast paths pack one row per `u64` and therefore need `n ≤ 64`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::codes::{min_distance_words, CodeError, LinearCode};
use crate::gf2::{BitMatrix, BitVec};
use crate::lcppair::{self, LcpCertificate, LcpError};
use crate::par::{self, Strategy};

pub const DEFAULT_BUDGET: u128 = 10_000_000;
pub const DEFAULT_SEED: u64 = 0x6c63_7032;
pub const MAX_SEARCH_LENGTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search needs {needed} candidates but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("malformed table: {0}")]
    Table(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Lcp(#[from] LcpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest number of candidates (subspaces, samples or code pairs) to examine.
    pub budget: u128,
    /// Cap on counter-witnesses kept by [`optimal_codes_report`].
    pub witness_limit: usize,
    pub strategy: Strategy,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            witness_limit: 8,
            strategy: Strategy::default(),
            seed: DEFAULT_SEED,
        }
    }
}

impl SearchConfig {
    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }
}

/// Number of `k`-dimensional subspaces of `F₂ⁿ`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut g: u128 = 1;
    for i in 0..k {
        let num = if n - i >= 128 {
            return u128::MAX;
        } else {
            (1u128 << (n - i)) - 1
        };
        let den = (1u128 << (i + 1)) - 1;
        g = match g.checked_mul(num) {
            Some(x) => x / den,
            None => return u128::MAX,
        };
    }
    g
}

/// All `k`-subsets of `0..n` in colexicographic order.
pub fn pivot_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = 0;
        while i < k
            && (if i + 1 < k {
                c[i] + 1 == c[i + 1]
            } else {
                c[i] + 1 == n
            })
        {
            i += 1;
        }
        if i == k {
            return out;
        }
        c[i] += 1;
        for (j, slot) in c.iter_mut().enumerate().take(i) {
            *slot = j;
        }
    }
}

/// Calls `f` on the RREF rows of every subspace with pivot set `pivots`, in
/// counting order of the free entries. Stops early when `f` returns `false`.
/// Returns `false` if it stopped early.
fn for_each_in_block(n: usize, pivots: &[usize], mut f: impl FnMut(&[u64]) -> bool) -> bool {
    let mut rows: Vec<u64> = pivots.iter().map(|&p| 1u64 << p).collect();
    let mut slots = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if !pivots.contains(&c) {
                slots.push((r, c));
            }
        }
    }
    if !f(&rows) {
        return false;
    }
    let total = 1u64 << slots.len();
    for t in 1..total {
        // t−1 → t flips free bits 0..=tz(t)
        for &(r, c) in &slots[..=t.trailing_zeros() as usize] {
            rows[r] ^= 1u64 << c;
        }
        if !f(&rows) {
            return false;
        }
    }
    true
}

fn rows_to_matrix(n: usize, rows: &[u64]) -> BitMatrix {
    let vecs: Vec<BitVec> = rows.iter().map(|&w| BitVec::from_words(n, &[w])).collect();
    BitMatrix::from_rows(n, &vecs).expect("rows have length n")
}

fn rows_to_code(n: usize, rows: &[u64]) -> LinearCode {
    LinearCode::from_generator(&rows_to_matrix(n, rows))
}

fn even_like_words(rows: &[u64]) -> bool {
    rows.iter().all(|r| r.count_ones() % 2 == 0)
}

/// Membership of the all-one vector; `rows` must be in RREF.
fn contains_one_words(n: usize, rows: &[u64]) -> bool {
    let mut v = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for &r in rows {
        if (v >> r.trailing_zeros()) & 1 == 1 {
            v ^= r;
        }
    }
    v == 0
}

/// RREF generators of all `k`-dimensional subspaces of `F₂ⁿ`, in enumeration order.
pub fn subspaces_of(n: usize, k: usize) -> impl Iterator<Item = BitMatrix> {
    assert!(n <= MAX_SEARCH_LENGTH, "subspace enumeration needs n ≤ 64");
    pivot_sets(n, k).into_iter().flat_map(move |p| {
        let mut block = Vec::new();
        for_each_in_block(n, &p, |rows| {
            block.push(rows_to_matrix(n, rows));
            true
        });
        block
    })
}

/// The `k`-dimensional subspaces of `F₂ⁿ` under a candidate budget.
#[derive(Debug, Clone)]
pub struct SubspaceEnumeration {
    n: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl SubspaceEnumeration {
    pub fn new(n: usize, k: usize, budget: u128) -> Result<Self, SearchError> {
        if k > n || n > MAX_SEARCH_LENGTH {
            return Err(SearchError::InvalidParameters(format!(
                "need k ≤ n ≤ {MAX_SEARCH_LENGTH}, got n={n}, k={k}"
            )));
        }
        let needed = gaussian_binomial(n, k);
        if needed > budget {
            return Err(SearchError::BudgetExceeded { needed, budget });
        }
        Ok(SubspaceEnumeration {
            n,
            k,
            blocks: pivot_sets(n, k),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn count(&self) -> u128 {
        gaussian_binomial(self.n, self.k)
    }

    /// Streams every subspace as a [`LinearCode`].
    pub fn codes(&self) -> impl Iterator<Item = LinearCode> + '_ {
        subspaces_of(self.n, self.k).map(|g| LinearCode::from_generator(&g))
    }

    /// Visits the RREF rows (bit `c` of a word is coordinate `c`) of every
    /// subspace in enumeration order.
    pub fn for_each_rows(&self, mut f: impl FnMut(&[u64])) {
        for p in &self.blocks {
            for_each_in_block(self.n, p, |rows| {
                f(rows);
                true
            });
        }
    }

    /// Order-preserving per-block map.
    fn map_blocks<R: Send>(
        &self,
        strategy: Strategy,
        f: impl Fn(&[usize]) -> R + Sync + Send,
    ) -> Vec<R> {
        par::map_slice(strategy, &self.blocks, |p| f(p))
    }

    /// First hit in enumeration order.
    fn find_first<R: Send>(
        &self,
        strategy: Strategy,
        f: impl Fn(&[u64]) -> Option<R> + Sync + Send,
    ) -> Option<R> {
        par::find_first(strategy, 0..self.blocks.len() as u64, |b| {
            let mut hit = None;
            for_each_in_block(self.n, &self.blocks[b as usize], |rows| {
                hit = f(rows);
                hit.is_none()
            });
            hit
        })
    }
}

/// `d_L(n, k)` by exhaustive enumeration.
pub fn best_distance(n: usize, k: usize, cfg: &SearchConfig) -> Result<usize, SearchError> {
    if k == 0 {
        return Err(SearchError::InvalidParameters("k must be positive".into()));
    }
    let e = SubspaceEnumeration::new(n, k, cfg.budget)?;
    let per_block = e.map_blocks(cfg.strategy, |p| {
        let mut best = 0;
        for_each_in_block(n, p, |rows| {
            best = best.max(min_distance_words(rows));
            true
        });
        best
    });
    Ok(per_block.into_iter().max().unwrap_or(0))
}

/// Optimal codes of a given distance, and those that are not even-like with **1**.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalCodesReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub scanned: u128,
    /// Subspaces with minimum distance exactly `d`.
    pub with_distance: u64,
    /// Those among them that are even-like and contain **1**.
    pub even_like_with_one: u64,
    /// First code of distance `d` in enumeration order.
    pub first: Option<LinearCode>,
    /// Codes of distance `d` that are odd-like or omit **1**, first ones first.
    pub counter_witnesses: Vec<LinearCode>,
}

impl OptimalCodesReport {
    pub fn all_even_like_with_one(&self) -> bool {
        self.with_distance == self.even_like_with_one
    }
}

impl fmt::Display for OptimalCodesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "k = {}", self.k)?;
        writeln!(f, "d = {}", self.d)?;
        writeln!(f, "scanned = {}", self.scanned)?;
        writeln!(f, "with_distance = {}", self.with_distance)?;
        writeln!(f, "even_like_with_one = {}", self.even_like_with_one)?;
        write!(f, "counter_witnesses = {}", self.counter_witnesses.len())
    }
}

struct BlockTally {
    with_distance: u64,
    good: u64,
    first: Option<Vec<u64>>,
    witnesses: Vec<Vec<u64>>,
}

pub fn optimal_codes_report(
    n: usize,
    k: usize,
    d: usize,
    cfg: &SearchConfig,
) -> Result<OptimalCodesReport, SearchError> {
    if k == 0 {
        return Err(SearchError::InvalidParameters("k must be positive".into()));
    }
    let e = SubspaceEnumeration::new(n, k, cfg.budget)?;
    let limit = cfg.witness_limit;
    let tallies = e.map_blocks(cfg.strategy, |p| {
        let mut t = BlockTally {
            with_distance: 0,
            good: 0,
            first: None,
            witnesses: Vec::new(),
        };
        for_each_in_block(n, p, |rows| {
            if min_distance_words(rows) == d {
                t.with_distance += 1;
                if t.first.is_none() {
                    t.first = Some(rows.to_vec());
                }
                if even_like_words(rows) && contains_one_words(n, rows) {
                    t.good += 1;
                } else if t.witnesses.len() < limit {
                    t.witnesses.push(rows.to_vec());
                }
            }
            true
        });
        t
    });
    let mut report = OptimalCodesReport {
        n,
        k,
        d,
        scanned: e.count(),
        with_distance: 0,
        even_like_with_one: 0,
        first: None,
        counter_witnesses: Vec::new(),
    };
    for t in tallies {
        report.with_distance += t.with_distance;
        report.even_like_with_one += t.good;
        if report.first.is_none() {
            report.first = t.first.map(|rows| rows_to_code(n, &rows));
        }
        for w in t.witnesses {
            if report.counter_witnesses.len() < limit {
                report.counter_witnesses.push(rows_to_code(n, &w));
            }
        }
    }
    Ok(report)
}

/// How the certificate of a [`DlcpResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlcpRoute {
    /// An optimal code with **1** outside its hull, paired with a permuted copy of itself.
    OptimalHullShift,
    /// Every optimal code is even-like with **1**; an optimal code punctured at
    /// its first coordinate and given a leading zero coordinate instead.
    PuncturedOptimal,
}

/// `d_LCP(n, k)` with a verified LCP attaining it.
#[derive(Debug, Clone)]
pub struct DlcpResult {
    pub n: usize,
    pub k: usize,
    pub d_l: usize,
    pub d_lcp: usize,
    pub route: DlcpRoute,
    /// `C`; the pair is `(C, (σ(C))⊥)`.
    pub code: LinearCode,
    pub partner: LinearCode,
    pub certificate: LcpCertificate,
    pub report: OptimalCodesReport,
}

/// Exact `d_LCP(n, k)` for `1 ≤ k < n` within the enumeration budget.
pub fn d_lcp_exact_tiny(n: usize, k: usize, cfg: &SearchConfig) -> Result<DlcpResult, SearchError> {
    if k == 0 || k >= n {
        return Err(SearchError::InvalidParameters(format!(
            "need 1 ≤ k < n, got n={n}, k={k}"
        )));
    }
    let d_l = best_distance(n, k, cfg)?;
    let cfg1 = SearchConfig {
        witness_limit: cfg.witness_limit.max(1),
        ..*cfg
    };
    let report = optimal_codes_report(n, k, d_l, &cfg1)?;
    let (route, code) = match report.counter_witnesses.first() {
        Some(c) => (DlcpRoute::OptimalHullShift, c.clone()),
        None => {
            let optimal = report.first.clone().ok_or_else(|| {
                SearchError::InternalConsistency(format!("no [{n},{k},{d_l}] code found"))
            })?;
            let punctured = optimal.puncture(&[0])?;
            (DlcpRoute::PuncturedOptimal, punctured.zero_extend())
        }
    };
    let expected = match route {
        DlcpRoute::OptimalHullShift => d_l,
        DlcpRoute::PuncturedOptimal => d_l - 1,
    };
    let certificate = lcppair::hull_shift_pair(&code, 0)?.with_security_parameter(&code, &code)?;
    let partner = code.permute(&certificate.sigma)?.dual();
    let security = certificate.security_parameter.unwrap_or(0);
    if !certificate.verified || certificate.final_dim != 0 || security != expected {
        return Err(SearchError::InternalConsistency(format!(
            "certificate for ({n},{k}) has security {security}, expected {expected}"
        )));
    }
    Ok(DlcpResult {
        n,
        k,
        d_l,
        d_lcp: expected,
        route,
        code,
        partner,
        certificate,
        report,
    })
}

/// A code found by [`lcp_security_search`] with its verified LCP.
#[derive(Debug, Clone)]
pub struct SecurityHit {
    pub code: LinearCode,
    pub partner: LinearCode,
    pub certificate: LcpCertificate,
    pub security_parameter: usize,
    /// Whether the search covered every subspace.
    pub exhaustive: bool,
}

fn hull_free_of_one(c: &LinearCode) -> bool {
    !(c.contains_all_one() && c.is_even_like())
}

/// Random full-rank `k × n` generator number `t` of the stream `seed`.
pub fn sampled_code(n: usize, k: usize, seed: u64, t: u64) -> Option<LinearCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    let mut m = BitMatrix::zeros(k, n);
    for r in 0..k {
        for c in 0..n {
            if rng.gen::<bool>() {
                m.set(r, c, true);
            }
        }
    }
    let code = LinearCode::from_generator(&m);
    (code.k() == k).then_some(code)
}

/// Looks for an `[n, k]` code with distance `≥ target_d` whose hull omits **1**
/// and turns it into a verified LCP. Enumerates when the subspace count fits
/// the budget, samples `budget` random generators otherwise.
pub fn lcp_security_search(
    n: usize,
    k: usize,
    target_d: usize,
    cfg: &SearchConfig,
) -> Result<Option<SecurityHit>, SearchError> {
    if k == 0 || k > n {
        return Err(SearchError::InvalidParameters(format!(
            "need 1 ≤ k ≤ n, got n={n}, k={k}"
        )));
    }
    let exhaustive = n <= MAX_SEARCH_LENGTH && gaussian_binomial(n, k) <= cfg.budget;
    let found = if exhaustive {
        let e = SubspaceEnumeration::new(n, k, cfg.budget)?;
        e.find_first(cfg.strategy, |rows| {
            let ok = min_distance_words(rows) >= target_d
                && !(even_like_words(rows) && contains_one_words(n, rows));
            ok.then(|| rows.to_vec())
        })
        .map(|rows| rows_to_code(n, &rows))
    } else {
        let samples = u64::try_from(cfg.budget).unwrap_or(u64::MAX);
        par::find_first(cfg.strategy, 0..samples, |t| {
            let c = sampled_code(n, k, cfg.seed, t)?;
            (hull_free_of_one(&c) && c.min_distance().ok()? >= target_d).then_some(c)
        })
    };
    let Some(code) = found else {
        return Ok(None);
    };
    let certificate = lcppair::hull_shift_pair(&code, 0)?.with_security_parameter(&code, &code)?;
    let partner = code.permute(&certificate.sigma)?.dual();
    let security_parameter = certificate.security_parameter.unwrap_or(0);
    if !certificate.verified || security_parameter < target_d {
        return Err(SearchError::InternalConsistency(format!(
            "search hit has security {security_parameter} below {target_d}"
        )));
    }
    Ok(Some(SecurityHit {
        code,
        partner,
        certificate,
        security_parameter,
        exhaustive,
    }))
}

/// Per-`ℓ` existence of `ℓ`-intersection pairs of `[n,k1,d1]` and `[n,k2,d2]` codes.
#[derive(Debug, Clone)]
pub struct IntersectionReport {
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    pub d1: usize,
    pub d2: usize,
    pub codes1: usize,
    pub codes2: usize,
    pub pairs: u128,
    /// For each `ℓ` in `max(0, k1+k2−n) ..= min(k1, k2)`, the first witness pair.
    pub by_ell: Vec<(usize, Option<(LinearCode, LinearCode)>)>,
}

impl IntersectionReport {
    pub fn exists(&self, ell: usize) -> Option<bool> {
        self.by_ell
            .iter()
            .find(|(l, _)| *l == ell)
            .map(|(_, w)| w.is_some())
    }
}

impl fmt::Display for IntersectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "codes: {} of [{},{},{}], {} of [{},{},{}]; pairs scanned: {}",
            self.codes1,
            self.n,
            self.k1,
            self.d1,
            self.codes2,
            self.n,
            self.k2,
            self.d2,
            self.pairs
        )?;
        for (ell, w) in &self.by_ell {
            let verdict = if w.is_some() {
                "exists"
            } else {
                "does not exist"
            };
            writeln!(f, "ell = {ell}: {verdict}")?;
        }
        Ok(())
    }
}

fn codes_with_distance(
    n: usize,
    k: usize,
    d: usize,
    cfg: &SearchConfig,
) -> Result<Vec<Vec<u64>>, SearchError> {
    let e = SubspaceEnumeration::new(n, k, cfg.budget)?;
    let blocks = e.map_blocks(cfg.strategy, |p| {
        let mut out = Vec::new();
        for_each_in_block(n, p, |rows| {
            if min_distance_words(rows) == d {
                out.push(rows.to_vec());
            }
            true
        });
        out
    });
    Ok(blocks.into_iter().flatten().collect())
}

fn rank_words(rows: impl IntoIterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut r in rows {
        for &b in &basis {
            r = r.min(r ^ b);
        }
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Exhaustive check of the ℓ-intersection pair existence claim for two
/// families of codes with exact minimum distances `d1` and `d2`.
pub fn guenda_conjecture_check(
    n: usize,
    k1: usize,
    k2: usize,
    d1: usize,
    d2: usize,
    cfg: &SearchConfig,
) -> Result<IntersectionReport, SearchError> {
    if k1 == 0 || k2 == 0 {
        return Err(SearchError::InvalidParameters(
            "dimensions must be positive".into(),
        ));
    }
    let a = codes_with_distance(n, k1, d1, cfg)?;
    let b = codes_with_distance(n, k2, d2, cfg)?;
    let pairs = a.len() as u128 * b.len() as u128;
    if pairs > cfg.budget {
        return Err(SearchError::BudgetExceeded {
            needed: pairs,
            budget: cfg.budget,
        });
    }
    let lo = (k1 + k2).saturating_sub(n);
    let hi = k1.min(k2);
    let per_first = par::map_slice(cfg.strategy, &a, |r1| {
        let mut first: Vec<Option<usize>> = vec![None; hi - lo + 1];
        for (j, r2) in b.iter().enumerate() {
            let ell = k1 + k2 - rank_words(r1.iter().chain(r2).copied());
            if first[ell - lo].is_none() {
                first[ell - lo] = Some(j);
            }
        }
        first
    });
    let mut by_ell = Vec::new();
    for ell in lo..=hi {
        let witness = per_first
            .iter()
            .enumerate()
            .find_map(|(i, f)| f[ell - lo].map(|j| (i, j)))
            .map(|(i, j)| (rows_to_code(n, &a[i]), rows_to_code(n, &b[j])));
        by_ell.push((ell, witness));
    }
    Ok(IntersectionReport {
        n,
        k1,
        k2,
        d1,
        d2,
        codes1: a.len(),
        codes2: b.len(),
        pairs,
        by_ell,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Computed,
    UserSupplied,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Computed => "computed",
            Provenance::UserSupplied => "user-supplied",
        }
    }
}

/// `d_L(n, k)` values keyed by `(n, k)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DlTable {
    entries: BTreeMap<(usize, usize), (usize, Provenance)>,
}

impl DlTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses lines `n k d [provenance]`; a missing provenance means user-supplied.
    pub fn parse(text: &str) -> Result<Self, SearchError> {
        let mut table = DlTable::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad =
                || SearchError::Table(format!("line {}: expected `n k d [provenance]`", idx + 1));
            if !(3..=4).contains(&fields.len()) {
                return Err(bad());
            }
            let nums: Vec<usize> = fields[..3]
                .iter()
                .map(|f| f.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            let prov = match fields.get(3) {
                None | Some(&"user-supplied") => Provenance::UserSupplied,
                Some(&"computed") => Provenance::Computed,
                Some(other) => {
                    return Err(SearchError::Table(format!(
                        "line {}: unknown provenance {other:?}",
                        idx + 1
                    )))
                }
            };
            table.insert(nums[0], nums[1], nums[2], prov);
        }
        Ok(table)
    }

    pub fn insert(&mut self, n: usize, k: usize, d: usize, provenance: Provenance) {
        self.entries.insert((n, k), (d, provenance));
    }

    pub fn get(&self, n: usize, k: usize) -> Option<(usize, Provenance)> {
        self.entries.get(&(n, k)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adjacent entries breaking `d_L(n,k) ≥ d_L(n,k+1)` or `d_L(n,k) ≤ d_L(n+1,k)`.
    pub fn monotonicity_violations(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::new();
        for (&(n, k), &(d, _)) in &self.entries {
            if let Some((d2, _)) = self.get(n, k + 1) {
                if d < d2 {
                    out.push(((n, k), (n, k + 1)));
                }
            }
            if let Some((d2, _)) = self.get(n + 1, k) {
                if d > d2 {
                    out.push(((n, k), (n + 1, k)));
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|(&(n, k), &(d, p))| format!("{n} {k} {d} {}\n", p.as_str()))
            .collect()
    }
}

/// Outcome of one `(n, k)` cell of a `d_L` / `d_LCP` table.
#[derive(Debug, Clone)]
pub struct TableCell {
    pub n: usize,
    pub k: usize,
    pub d_l: Option<usize>,
    pub d_lcp: Option<usize>,
    pub provenance: Option<Provenance>,
    pub status: CellStatus,
    pub result: Option<DlcpResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    Exact,
    /// `d_L` taken from a user table; `d_LCP` only bracketed.
    FromTable,
    BudgetExceeded,
    Invalid,
}

impl CellStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CellStatus::Exact => "exact",
            CellStatus::FromTable => "from-table",
            CellStatus::BudgetExceeded => "budget-exceeded",
            CellStatus::Invalid => "invalid",
        }
    }
}

pub fn table_cell(n: usize, k: usize, cfg: &SearchConfig, user: Option<&DlTable>) -> TableCell {
    let mut cell = TableCell {
        n,
        k,
        d_l: None,
        d_lcp: None,
        provenance: None,
        status: CellStatus::Invalid,
        result: None,
    };
    if k == 0 || k >= n {
        return cell;
    }
    match d_lcp_exact_tiny(n, k, cfg) {
        Ok(r) => {
            cell.d_l = Some(r.d_l);
            cell.d_lcp = Some(r.d_lcp);
            cell.provenance = Some(Provenance::Computed);
            cell.status = CellStatus::Exact;
            cell.result = Some(r);
        }
        Err(SearchError::BudgetExceeded { .. }) => {
            cell.status = CellStatus::BudgetExceeded;
            if let Some((d, p)) = user.and_then(|t| t.get(n, k)) {
                cell.d_l = Some(d);
                cell.provenance = Some(p);
                cell.status = CellStatus::FromTable;
            }
        }
        Err(_) => {}
    }
    cell
}

impl TableCell {
    pub const CSV_HEADER: &'static str = "n,k,d_L,d_LCP,witness_file,provenance,status";

    pub fn csv_row(&self, witness_file: Option<&str>) -> String {
        let opt = |v: Option<usize>| v.map_or_else(|| "unknown".to_string(), |x| x.to_string());
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.k,
            opt(self.d_l),
            opt(self.d_lcp),
            witness_file.unwrap_or(""),
            self.provenance.map_or("unknown", |p| p.as_str()),
            self.status.as_str()
        )
    }
}
