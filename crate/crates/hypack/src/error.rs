//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex set is not strictly increasing or contains duplicates: {0}")]
    NotStrictlyIncreasing(String),

    #[error("vertex label {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge has {got} vertices, expected {expected}")]
    EdgeWrongSize { expected: usize, got: usize },

    #[error("duplicate edge {0}")]
    DuplicateEdge(String),

    #[error("uniformity k={k} exceeds vertex count n={n} on a non-empty hypergraph")]
    KExceedsN { k: usize, n: usize },

    #[error("uniformity k must be at least 1")]
    ZeroK,

    #[error("not a permutation of 1..={n}: {reason}")]
    NotAPermutation { n: usize, reason: String },

    #[error("hypergraphs have mismatched parameters: (n={n1}, k={k1}) vs (n={n2}, k={k2})")]
    ParamMismatch {
        n1: usize,
        k1: usize,
        n2: usize,
        k2: usize,
    },

    #[error("condition applies to graphs only (k=2), got k={k}")]
    GraphsOnly { k: usize },

    #[error("beta={beta} out of range 0 < beta < k={k}")]
    InvalidBeta { beta: usize, k: usize },

    #[error("subset size l={l} out of range 1..={k}")]
    InvalidSubsetSize { l: usize, k: usize },

    #[error("subset has {got} vertices, more than k={k}")]
    SubsetTooLarge { got: usize, k: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid design parameters t={t} n={n} k={k} lambda={lambda}: {reason}")]
    InvalidDesignSpec {
        t: usize,
        n: usize,
        k: usize,
        lambda: usize,
        reason: &'static str,
    },

    #[error("budget must be positive")]
    ZeroBudget,

    #[error("n={0} is not congruent to 1 or 3 mod 6")]
    NotSteinerAdmissible(usize),

    #[error("construction requires even k, got k={0}")]
    EvenKRequired(usize),

    #[error("construction requires odd k >= 3, got k={0}")]
    OddKRequired(usize),

    #[error("copy count t={t} does not divide n={n}")]
    TMustDivideN { t: usize, n: usize },

    #[error("divisibility conditions fail for t={t} n={n} k={k} lambda={lambda} at i={i}")]
    DivisibilityFailed {
        t: usize,
        n: usize,
        k: usize,
        lambda: usize,
        i: usize,
    },

    #[error("design search failed: {0}")]
    DesignSearch(String),

    #[error(
        "padding r={r} leaves no room for {kernels} kernels of size {alpha} on n={n} vertices"
    )]
    PaddingTooLarge {
        r: usize,
        kernels: usize,
        alpha: usize,
        n: usize,
    },

    #[error("verifier applies to pair kind {expected}, got {got}")]
    WrongPairKind {
        expected: &'static str,
        got: &'static str,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
