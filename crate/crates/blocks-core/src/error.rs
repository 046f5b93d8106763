//! Error types shared across the library.

use thiserror::Error;

/// Errors produced by the library.
///
/// Most operations are total on their documented domains; errors encode either
/// invalid input data (dimension mismatches, illegal constructions) or
/// structured refusals (degenerate singularities, theorem-violation findings).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    /// Rank outside the legal range for the family (A/B/C need n ≥ 1, D needs n ≥ 2).
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },

    /// Root kind not available in the given family (e.g. short root e_i outside B).
    #[error("root {root} is not legal in family {family}")]
    IllegalRoot { family: char, root: String },

    /// Coordinate-vector length does not match the root-system rank.
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Weight violates the family's integrality pattern
    /// (A/C: all integers; B/D: all integers or all half-integers).
    #[error("weight {weight} is not integral for family {family}")]
    NotIntegral { family: char, weight: String },

    /// Sign vector violates the family constraint
    /// (A: no sign changes; D: even number of sign changes).
    #[error("sign vector violates the family {family} constraint")]
    IllegalSigns { family: char },

    /// The degenerate D singularity where the two smallest singular values are
    /// both zero (a_{m̄−1} = 0); such systems are isomorphic to smaller
    /// non-degenerate ones and are rejected rather than remapped.
    #[error("degenerate D singularity: a_(m̄−1) = 0 (excluded by standing assumption)")]
    DegenerateSingularity,

    /// A subset J that cannot be realized as the singular set of any dominant
    /// weight without hitting the degenerate configuration.
    #[error("subset J is unrealizable as a singular set for this system")]
    UnrealizableJ,

    /// Weight is not in the Weyl-orbit coset under consideration.
    #[error("weight {weight} is not in the coset under consideration")]
    WeightNotInCoset { weight: String },

    /// Weight is Φ_I-singular where a Φ_I-regular one is required.
    #[error("weight {weight} is Φ_I-singular")]
    NotRegular { weight: String },

    /// The (S, S̄) pair is not separable for the system.
    #[error("pair (S={s:?}, S̄={sbar:?}) is not a separable pair here")]
    PairNotSeparable { s: Vec<usize>, sbar: Vec<usize> },

    /// The (S, S̄) pair is separable but not strongly separable, so it cannot
    /// drive a product decomposition.
    #[error("pair (S={s:?}, S̄={sbar:?}) is not strongly separable")]
    PairNotStronglySeparable { s: Vec<usize>, sbar: Vec<usize> },

    /// The coset is empty where a nonempty one is required.
    #[error("the coset Wλ̄ ∩ Λ_I^+ is empty")]
    EmptyCoset,

    /// Pseudo-indecomposability queries need at least two simple modules.
    #[error("the category has fewer than two simple modules")]
    TooFewSimples,

    /// The two-block parity criterion was invoked outside its applicability.
    #[error("not a two-block pseudo-indecomposable system")]
    NotTwoBlockCase,

    /// Partitions of different totals compared under dominance.
    #[error("dominance comparison of partitions with unequal totals {0} and {1}")]
    UnequalN(u64, u64),

    /// An internal consistency statement failed. This is a *finding*: it would
    /// falsify one of the theorems the code transcribes, so it is surfaced
    /// loudly instead of being absorbed.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}
