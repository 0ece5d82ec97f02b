//! Abstract factorials over the ring of integers.
//!
//! An abstract factorial is a map `n -> n!_a` into the positive integers
//! with `0!_a = 1`, integral generalized binomial coefficients
//! `n!_a / (k!_a (n-k)!_a)`, and `n! | n!_a`. This crate provides:
//!
//! - [`arith`] — big-integer arithmetic functions: divisor sums, the Von
//!   Mangoldt exponential, Legendre valuations, `p^m (p-1)` representations.
//! - [`factorial`] — the [`factorial::FactorialSequence`] abstraction with
//!   axiom verification, generalized binomials, ratio analysis, and a
//!   catalogue of constructions (exceptional factorials, Knuth–Wilf
//!   products, `(bn)!/b^n`, `(n!)^{qn}`, `n! q_n`, ...).
//! - [`factorial_set`] — factorial sets built from primitive sequences
//!   (`B_n = prod |b_i|^{floor(n/i)}`), binomial exponent vectors,
//!   primitive recovery, and the prime-product primitive.
//! - [`bhargava`] — generalized factorials of finite sets via p-orderings,
//!   plus closed forms for the set of primes and geometric sets.
//! - [`hcn`] — highly composite numbers: record-scan generation,
//!   exponent-structure checks, and hcn divisible by `m!`.
//! - [`series`] — reciprocal-factorial series evaluated in exact rational
//!   arithmetic with proven enclosures.
//!
//! All computation is exact; floating point appears only in decimal
//! rendering of series enclosures.

pub mod arith;
pub mod bfile;
pub mod bhargava;
pub mod error;
pub mod factorial;
pub mod factorial_set;
pub mod hcn;
pub mod series;

mod lncmp;

/// Unbounded nonnegative integer.
pub type Natural = num_bigint::BigUint;
/// Unbounded signed integer.
pub type Int = num_bigint::BigInt;
/// Exact fraction, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

pub use error::{Error, Result};
pub use factorial::FactorialSequence;
pub use factorial_set::{FactorialSet, PrimitiveSequence};
pub use series::SeriesEstimate;
