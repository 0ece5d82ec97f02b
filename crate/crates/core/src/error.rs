//! Error type shared by every module of the crate.

use crate::Rational;
use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument that must be positive was zero.
    #[error("{0} must be positive (got 0)")]
    ZeroArgument(&'static str),

    /// An argument that must be prime was not.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// A parameter fell outside its documented range.
    #[error("{what}: {details}")]
    OutOfRange {
        what: &'static str,
        details: String,
    },

    /// A generalized binomial coefficient failed to be an integer.
    #[error("binomial ({n} over {k}) of `{sequence}` is not an integer")]
    NonIntegralBinomial {
        sequence: String,
        n: u32,
        k: u32,
    },

    /// A consecutive-factorial ratio failed to be an integer.
    #[error("ratio r_{k} of `{sequence}` is not an integer")]
    NonIntegralRatio { sequence: String, k: u32 },

    /// A structural lemma about abstract factorials was violated, which
    /// means the inspected sequence is not an abstract factorial.
    #[error("`{sequence}` violates a factorial ratio lemma at k={k}: {details}")]
    RatioLemmaViolation {
        sequence: String,
        k: u32,
        details: String,
    },

    /// A primitive sequence contained a zero term.
    #[error("primitive term b_{index} is zero")]
    ZeroPrimitiveTerm { index: u32 },

    /// The divisibility hypothesis `q_i q_j | q_n` failed.
    #[error("divisibility hypothesis fails: q_{i} * q_{j} does not divide q_{n}")]
    QnHypothesis { i: u32, j: u32, n: u32 },

    /// An operation requiring a self-factorial set received one that is not.
    #[error("set is not self-factorial: {n}! does not divide B_{n}")]
    NotSelfFactorial { n: u32 },

    /// A series tail bound requires `n!` to divide `n!_a` and it did not.
    #[error("tail bound invalid: {n}! does not divide term {n} of `{sequence}`")]
    TailBoundInvalid { sequence: String, n: u32 },

    /// A finite set contained duplicate elements.
    #[error("set elements must be distinct (duplicate {0})")]
    DuplicateElement(i64),

    /// A bounded search ran out of room.
    #[error("search exhausted: {what} (limit {limit})")]
    SearchExhausted { what: &'static str, limit: String },

    /// Exact division failed where the caller asserted divisibility.
    #[error("exact division failed: {num} is not divisible by {den}")]
    NotDivisible { num: String, den: String },

    /// A recovered primitive term was non-integral.
    #[error("primitive recovery fails at n={index}: b_{index} = {value}")]
    NonIntegralPrimitive { index: u32, value: Rational },

    /// Input file could not be parsed.
    #[error("parse error on line {line}: {details}")]
    Parse { line: usize, details: String },
}
