//! Binary linear complementary pairs (LCPs) of codes.
//!
//! Given two binary `[n, k]` codes `C1`, `C2`, the [`lcppair`] module builds an
//! explicit coordinate permutation `σ` with `dim(C1 ∩ (σ(C2))⊥)` equal to any
//! reachable target, including `0` (an LCP) exactly when the all-one vector
//! lies in neither `C1 ∩ C2⊥` nor `C2 ∩ C1⊥`. [`constructions`] provides the
//! simplex, Reed-Muller and Solomon-Stiffler families, and [`search`] holds the
//! exhaustive subspace sweeps used to pin down `d_L` and `d_LCP` at small sizes.

pub mod codes;
pub mod constructions;
pub mod gf2;
pub mod lcppair;
pub mod par;
pub mod search;

pub use codes::{security_parameter, CodeError, EnumerationConfig, LinearCode, WeightDistribution};
pub use gf2::{format_matrix, parse_matrix, BitMatrix, BitVec, MatrixError, Permutation};
pub use lcppair::{LcpCertificate, LcpError, ReductionStep, StepKind};
pub use par::Strategy;
