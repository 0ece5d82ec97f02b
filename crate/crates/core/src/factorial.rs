//! The abstract-factorial abstraction: memoized sequences, axiom
//! verification, generalized binomial coefficients, consecutive-ratio
//! analysis, and the named constructions.
//!
//! A [`FactorialSequence`] always exposes exact big-integer values. Some
//! constructions additionally carry a factored backend (prime -> exponent
//! with big exponents); verification sweeps use it automatically, which is
//! what makes sequences whose values outgrow memory (the exceptional
//! factorials) checkable to the same bounds as everything else.

use std::sync::{Arc, Mutex};

use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;

use crate::arith::{
    exact_div, factored_factorial, factorial, nth_prime, primes_up_to, Factored,
};
use crate::error::{Error, Result};
use crate::Natural;

type ValueGen = dyn Fn(usize, &[Natural]) -> Natural + Send + Sync;
type FactoredGen = dyn Fn(usize, &[Factored]) -> Factored + Send + Sync;

/// Lazily grown, internally synchronized memo table. The generator sees
/// the already-computed prefix, so recursively defined sequences stay
/// linear-time.
struct Memo<T> {
    cells: Mutex<Vec<T>>,
    gen: Box<dyn Fn(usize, &[T]) -> T + Send + Sync>,
}

impl<T: Clone> Memo<T> {
    fn new(gen: Box<dyn Fn(usize, &[T]) -> T + Send + Sync>) -> Self {
        Memo {
            cells: Mutex::new(Vec::new()),
            gen,
        }
    }

    fn get(&self, n: usize) -> T {
        let mut cells = self.cells.lock().unwrap();
        while cells.len() <= n {
            let next = (self.gen)(cells.len(), &cells);
            cells.push(next);
        }
        cells[n].clone()
    }

    fn prefix(&self, n: usize) -> Vec<T> {
        let mut cells = self.cells.lock().unwrap();
        while cells.len() <= n {
            let next = (self.gen)(cells.len(), &cells);
            cells.push(next);
        }
        cells[..=n].to_vec()
    }
}

/// A named generator of factorial values `n!_a`, memoized on demand.
///
/// Cloning is cheap (shared memo). All reads are thread-safe.
#[derive(Clone)]
pub struct FactorialSequence {
    inner: Arc<Inner>,
}

struct Inner {
    name: String,
    values: Memo<Natural>,
    factored: Option<Memo<Factored>>,
}

impl std::fmt::Debug for FactorialSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FactorialSequence")
            .field("name", &self.inner.name)
            .finish()
    }
}

impl FactorialSequence {
    /// Build from a plain value generator. The generator receives the
    /// index and the prefix of already-computed values.
    pub fn from_gen(
        name: impl Into<String>,
        gen: Box<ValueGen>,
    ) -> Self {
        FactorialSequence {
            inner: Arc::new(Inner {
                name: name.into(),
                values: Memo::new(gen),
                factored: None,
            }),
        }
    }

    /// Build with both a value generator and a factored generator. The two
    /// must describe the same sequence.
    pub fn from_gen_with_factored(
        name: impl Into<String>,
        gen: Box<ValueGen>,
        fgen: Box<FactoredGen>,
    ) -> Self {
        FactorialSequence {
            inner: Arc::new(Inner {
                name: name.into(),
                values: Memo::new(gen),
                factored: Some(Memo::new(fgen)),
            }),
        }
    }

    /// Build from a closed-form function of the index alone.
    pub fn from_fn(
        name: impl Into<String>,
        f: impl Fn(u64) -> Natural + Send + Sync + 'static,
    ) -> Self {
        Self::from_gen(name, Box::new(move |n, _| f(n as u64)))
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// `n!_a`.
    pub fn value_at(&self, n: u64) -> Natural {
        self.inner.values.get(n as usize)
    }

    /// Values `0!_a ..= N!_a`.
    pub fn values_to(&self, n: u64) -> Vec<Natural> {
        self.inner.values.prefix(n as usize)
    }

    /// Factored form of `n!_a` when this sequence carries one.
    pub fn factored_at(&self, n: u64) -> Option<Factored> {
        self.inner.factored.as_ref().map(|m| m.get(n as usize))
    }

    pub fn has_factored(&self) -> bool {
        self.inner.factored.is_some()
    }

    fn factored_to(&self, n: u64) -> Option<Vec<Factored>> {
        self.inner.factored.as_ref().map(|m| m.prefix(n as usize))
    }

    /// The multiplier `h_n = n!_a / n!`, exact. Errors when `n!` does not
    /// divide `n!_a` (axiom 3 failure).
    pub fn h_at(&self, n: u64) -> Result<Natural> {
        let v = self.value_at(n);
        let f = factorial(n);
        exact_div(&v, &f).ok_or_else(|| Error::NotDivisible {
            num: v.to_string(),
            den: f.to_string(),
        })
    }

    /// The ordinary factorial `n!`.
    pub fn ordinary() -> Self {
        Self::from_gen_with_factored(
            "ordinary",
            Box::new(|n, prev| {
                if n == 0 {
                    Natural::one()
                } else {
                    &prev[n - 1] * Natural::from(n as u64)
                }
            }),
            Box::new(|n, _| factored_factorial(n as u64)),
        )
    }

    /// Knuth–Wilf style product: `n!_a = C_1 C_2 ... C_n`, or
    /// `n! C_1 ... C_n` when `force_factorial_multiplier` is set. The
    /// unforced form must be checked against axiom 3 by the caller.
    pub fn knuth_wilf(
        name: impl Into<String>,
        c: Arc<dyn Fn(u64) -> Natural + Send + Sync>,
        force_factorial_multiplier: bool,
    ) -> Self {
        Self::from_gen(
            name,
            Box::new(move |n, prev| {
                if n == 0 {
                    return Natural::one();
                }
                let mut v = &prev[n - 1] * c(n as u64);
                if force_factorial_multiplier {
                    v *= Natural::from(n as u64);
                }
                v
            }),
        )
    }

    /// `n!_a = n! * F_1 F_2 ... F_n` over the Fibonacci numbers
    /// (`F_1 = F_2 = 1`); binomials are products of ordinary binomials
    /// with Fibonomial coefficients.
    pub fn fibonacci_factorial() -> Self {
        let fib = |k: u64| -> Natural {
            let (mut a, mut b) = (Natural::one(), Natural::one());
            for _ in 2..k {
                let next = &a + &b;
                a = b;
                b = next;
            }
            b
        };
        Self::knuth_wilf("fibonacci-factorial", Arc::new(fib), true)
    }

    /// `n!_a = n! * q^{n(n+1)/2}` (Knuth–Wilf with `C_k = q^k`).
    pub fn geometric(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroArgument("geometric ratio"));
        }
        Ok(Self::knuth_wilf(
            format!("geometric:{q}"),
            Arc::new(move |k| Natural::from(q).pow(k as u32)),
            true,
        ))
    }

    /// `n!_b = (bn)! / b^n` with `0!_b = 1`; integral for every `b >= 1`.
    pub fn scaled_multiple(b: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::ZeroArgument("scaled-multiple parameter"));
        }
        Ok(Self::from_gen_with_factored(
            format!("scaled-multiple:{b}"),
            Box::new(move |n, _| {
                let n = n as u64;
                exact_div(&factorial(b * n), &Natural::from(b).pow(n as u32))
                    .expect("(bn)!/b^n is an integer")
            }),
            Box::new(move |n, _| {
                let n = n as u64;
                factored_factorial(b * n)
                    .try_div(&Factored::of(b).pow(n as u32))
                    .expect("(bn)!/b^n is an integer")
            }),
        ))
    }

    /// `n!_a = (n!)^{qn}` with `0!_a = 1`.
    pub fn power_factorial(q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroArgument("power exponent"));
        }
        Ok(Self::from_gen_with_factored(
            format!("power:{q}"),
            Box::new(move |n, _| factorial(n as u64).pow(q * n as u32)),
            Box::new(move |n, _| factored_factorial(n as u64).pow(q * n as u32)),
        ))
    }

    /// `n!_a = n! q_n` for a sequence with `q_0 = 1` and
    /// `q_i q_j | q_n` whenever `i + j = n`. The hypothesis is checked up
    /// to `validate_to` at construction; the first violated triple is
    /// reported.
    pub fn qn_factorial(
        name: impl Into<String>,
        q: Arc<dyn Fn(u64) -> Natural + Send + Sync>,
        validate_to: u64,
    ) -> Result<Self> {
        if !q(0).is_one() {
            return Err(Error::OutOfRange {
                what: "qn factorial",
                details: "q_0 must equal 1".into(),
            });
        }
        let qs: Vec<Natural> = (0..=validate_to).map(&*q).collect();
        for n in 2..=validate_to as usize {
            for i in 1..=n / 2 {
                let j = n - i;
                if !qs[n].is_multiple_of(&(&qs[i] * &qs[j])) {
                    return Err(Error::QnHypothesis {
                        i: i as u32,
                        j: j as u32,
                        n: n as u32,
                    });
                }
            }
        }
        Ok(Self::from_gen(
            name,
            Box::new(move |n, _| factorial(n as u64) * q(n as u64)),
        ))
    }

    /// `q_n = n! / 2^{floor(n/2)}`, so `n!_a = n!^2 / 2^{floor(n/2)}`. The
    /// reciprocal series is the Bessel-function example constant.
    pub fn half_power_weight(validate_to: u64) -> Result<Self> {
        Self::qn_factorial(
            "half-power-weight",
            Arc::new(|n| {
                exact_div(&factorial(n), &Natural::from(2u32).pow((n / 2) as u32))
                    .expect("2^{floor(n/2)} divides n!")
            }),
            validate_to,
        )
    }

    /// Bhargava's factorial of the set of primes, closed form
    /// `n!_a = prod_p p^{sum_m floor((n-1) / (p^m (p-1)))}`.
    pub fn bhargava_primes() -> Self {
        use crate::bhargava::bhargava_primes_factored;
        Self::from_gen_with_factored(
            "bhargava-primes",
            Box::new(|n, _| bhargava_primes_factored(n as u64).to_natural()),
            Box::new(|n, _| bhargava_primes_factored(n as u64)),
        )
    }

    /// The shift of [`FactorialSequence::bhargava_primes`] by one index:
    /// `n!_a = (n+1)!_X = prod_p p^{sum_m floor(n / (p^m (p-1)))}`. This is
    /// the sequence whose primitive is the prime-product sequence of
    /// [`crate::factorial_set::bhargava_prime_primitive`].
    pub fn bhargava_primes_shifted() -> Self {
        use crate::bhargava::bhargava_primes_factored;
        Self::from_gen_with_factored(
            "bhargava-primes-shifted",
            Box::new(|n, _| bhargava_primes_factored(n as u64 + 1).to_natural()),
            Box::new(|n, _| bhargava_primes_factored(n as u64 + 1)),
        )
    }

    /// The candidate `f(0) = f(1) = 1`, `f(n) = p_{n-1}!`. Whether this is
    /// an abstract factorial is open; see
    /// [`prime_superadditivity_check`].
    pub fn prime_factorial_candidate() -> Self {
        Self::from_fn("prime-factorials", |n| {
            if n < 2 {
                Natural::one()
            } else {
                factorial(nth_prime(n - 1).expect("index >= 1"))
            }
        })
    }

    /// The exceptional factorial with the given squaring exponent
    /// (`exponent = 2` is the base construction): `0!_a = 1!_a = 1`,
    /// `(n+1)!_a = n!_a` for `n = 3m - 1`, and otherwise `n!_a` multiplies
    /// `n!` (and `(n+1)!` when `n = 3m - 1`) into the `exponent`-th power
    /// of the product of all earlier factorials. Values grow so fast that
    /// only the factored backend is usable beyond roughly `n = 20`.
    pub fn exceptional(exponent: u32) -> Result<Self> {
        if exponent < 2 {
            return Err(Error::OutOfRange {
                what: "exceptional factorial",
                details: format!("exponent must be >= 2, got {exponent}"),
            });
        }
        let name = format!("exceptional:{exponent}");
        let e = exponent;
        let values = Box::new(move |n: usize, prev: &[Natural]| -> Natural {
            match n {
                0 | 1 => Natural::one(),
                _ if n % 3 == 0 => prev[n - 1].clone(),
                _ => {
                    let mut acc: Natural = prev[1..n]
                        .iter()
                        .fold(Natural::one(), |acc, v| acc * v);
                    acc = acc.pow(e);
                    acc *= factorial(n as u64);
                    if n % 3 == 2 {
                        acc *= factorial(n as u64 + 1);
                    }
                    acc
                }
            }
        });
        let factored = Box::new(move |n: usize, prev: &[Factored]| -> Factored {
            match n {
                0 | 1 => Factored::one(),
                _ if n % 3 == 0 => prev[n - 1].clone(),
                _ => {
                    let prod = prev[1..n]
                        .iter()
                        .fold(Factored::one(), |acc, v| acc.mul(v));
                    let mut acc = prod.pow(e).mul(&factored_factorial(n as u64));
                    if n % 3 == 2 {
                        acc = acc.mul(&factored_factorial(n as u64 + 1));
                    }
                    acc
                }
            }
        });
        Ok(Self::from_gen_with_factored(name, values, factored))
    }
}

/// Pointwise product of two abstract factorials; the semigroup operation.
/// The product passes the axioms whenever both factors do.
pub fn semigroup_product(a: &FactorialSequence, b: &FactorialSequence) -> FactorialSequence {
    let name = format!("{}*{}", a.name(), b.name());
    let (av, bv) = (a.clone(), b.clone());
    let values: Box<ValueGen> = Box::new(move |n, _| av.value_at(n as u64) * bv.value_at(n as u64));
    if a.has_factored() && b.has_factored() {
        let (af, bf) = (a.clone(), b.clone());
        FactorialSequence::from_gen_with_factored(
            name,
            values,
            Box::new(move |n, _| {
                af.factored_at(n as u64)
                    .unwrap()
                    .mul(&bf.factored_at(n as u64).unwrap())
            }),
        )
    } else {
        FactorialSequence::from_gen(name, values)
    }
}

/// Result of checking the three abstract-factorial axioms up to a bound.
/// Failures are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked_to: u32,
    /// `0!_a = 1`.
    pub axiom1_ok: bool,
    /// Pairs `(n, k)` whose generalized binomial coefficient is not an
    /// integer, for `0 <= k <= n <= checked_to`.
    pub axiom2_failures: Vec<(u32, u32)>,
    /// Indices `n >= 1` with `n!` not dividing `n!_a`.
    pub axiom3_failures: Vec<u32>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.axiom1_ok && self.axiom2_failures.is_empty() && self.axiom3_failures.is_empty()
    }
}

/// Check the defining axioms for `0 <= k <= n <= limit`, collecting every
/// failure. Sequences with a factored backend are checked componentwise on
/// prime exponents; everything else by exact big-integer division.
pub fn verify_axioms(seq: &FactorialSequence, limit: u32) -> AxiomReport {
    if let Some(fac) = seq.factored_to(limit as u64) {
        return verify_axioms_factored(&fac, limit);
    }
    let values = seq.values_to(limit as u64);
    let axiom1_ok = values[0].is_one();

    let mut axiom2_failures: Vec<(u32, u32)> = (0..=limit)
        .into_par_iter()
        .flat_map_iter(|n| {
            let values = &values;
            (0..=n / 2).filter_map(move |k| {
                let den = &values[k as usize] * &values[(n - k) as usize];
                if values[n as usize].is_multiple_of(&den) {
                    None
                } else {
                    Some((n, k))
                }
            })
        })
        .collect();
    // binomials are symmetric in k <-> n-k; mirror the failures
    let mirrored: Vec<(u32, u32)> = axiom2_failures
        .iter()
        .filter(|&&(n, k)| k != n - k)
        .map(|&(n, k)| (n, n - k))
        .collect();
    axiom2_failures.extend(mirrored);
    axiom2_failures.sort_unstable();

    let axiom3_failures = (1..=limit)
        .filter(|&n| !values[n as usize].is_multiple_of(&factorial(n as u64)))
        .collect();

    AxiomReport {
        checked_to: limit,
        axiom1_ok,
        axiom2_failures,
        axiom3_failures,
    }
}

fn verify_axioms_factored(fac: &[Factored], limit: u32) -> AxiomReport {
    let axiom1_ok = fac[0].is_one();
    let mut axiom2_failures = Vec::new();
    for n in 0..=limit {
        for k in 0..=n / 2 {
            let den = fac[k as usize].mul(&fac[(n - k) as usize]);
            if !den.divides(&fac[n as usize]) {
                axiom2_failures.push((n, k));
                if k != n - k {
                    axiom2_failures.push((n, n - k));
                }
            }
        }
    }
    axiom2_failures.sort_unstable();
    let axiom3_failures = (1..=limit)
        .filter(|&n| !factored_factorial(n as u64).divides(&fac[n as usize]))
        .collect();
    AxiomReport {
        checked_to: limit,
        axiom1_ok,
        axiom2_failures,
        axiom3_failures,
    }
}

/// The generalized binomial coefficient `n!_a / (k!_a (n-k)!_a)` as an
/// exact integer. Non-integrality is a distinct error.
pub fn binomial(seq: &FactorialSequence, n: u32, k: u32) -> Result<Natural> {
    if k > n {
        return Err(Error::OutOfRange {
            what: "binomial",
            details: format!("k={k} exceeds n={n}"),
        });
    }
    let num = seq.value_at(n as u64);
    let den = seq.value_at(k as u64) * seq.value_at((n - k) as u64);
    exact_div(&num, &den).ok_or_else(|| Error::NonIntegralBinomial {
        sequence: seq.name().to_string(),
        n,
        k,
    })
}

/// Consecutive-ratio profile `r_k = (k+1)!_a / k!_a` for `k < limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioProfile {
    /// `ratios[k] = r_k`, each a positive integer for an abstract factorial.
    pub ratios: Vec<Natural>,
    /// Indices `k >= 2` with `r_k = 1`, i.e. equal consecutive factorials.
    pub equal_pairs: Vec<u32>,
}

/// Compute all ratios `r_k`, `k < limit`, flag equal consecutive pairs,
/// and assert the two ratio lemmas: no run of three equal factorials, and
/// `r_{k-1} >= 3` at every `r_k = 1` when `2!_a != 2`.
pub fn ratio_profile(seq: &FactorialSequence, limit: u32) -> Result<RatioProfile> {
    let values = seq.values_to(limit as u64);
    let mut ratios = Vec::with_capacity(limit as usize);
    for k in 0..limit as usize {
        match exact_div(&values[k + 1], &values[k]) {
            Some(r) => ratios.push(r),
            None => {
                return Err(Error::NonIntegralRatio {
                    sequence: seq.name().to_string(),
                    k: k as u32,
                })
            }
        }
    }
    let equal_pairs: Vec<u32> = (2..limit)
        .filter(|&k| ratios[k as usize].is_one())
        .collect();
    check_ratio_lemmas(
        seq.name(),
        limit,
        |k| ratios[k as usize].is_one(),
        |k| {
            let r = &ratios[k as usize];
            if r.is_one() {
                RatioClass::One
            } else if *r == Natural::from(2u32) {
                RatioClass::Two
            } else {
                RatioClass::AtLeastThree
            }
        },
        values[2] == Natural::from(2u32),
    )?;
    Ok(RatioProfile {
        ratios,
        equal_pairs,
    })
}

enum RatioClass {
    One,
    Two,
    AtLeastThree,
}

fn check_ratio_lemmas(
    name: &str,
    limit: u32,
    is_one: impl Fn(u32) -> bool,
    classify: impl Fn(u32) -> RatioClass,
    two_fac_is_two: bool,
) -> Result<()> {
    for k in 0..limit.saturating_sub(1) {
        if is_one(k) && is_one(k + 1) {
            return Err(Error::RatioLemmaViolation {
                sequence: name.to_string(),
                k,
                details: "three consecutive equal factorials".into(),
            });
        }
    }
    if !two_fac_is_two {
        for k in 2..limit {
            if is_one(k) {
                if let RatioClass::One | RatioClass::Two = classify(k - 1) {
                    return Err(Error::RatioLemmaViolation {
                        sequence: name.to_string(),
                        k,
                        details: format!("r_{} = 1 but r_{} < 3", k, k - 1),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Equal-consecutive-factorial scan that works in factored form when the
/// sequence carries one, so it stays usable where values cannot be
/// materialized. Returns the indices `k >= 2` with `k!_a = (k+1)!_a` and
/// verifies the same ratio lemmas as [`ratio_profile`].
pub fn scan_equal_factorials(seq: &FactorialSequence, limit: u32) -> Result<Vec<u32>> {
    if let Some(fac) = seq.factored_to(limit as u64) {
        // every consecutive ratio must at least be integral
        for k in 0..limit as usize {
            if !fac[k].divides(&fac[k + 1]) {
                return Err(Error::NonIntegralRatio {
                    sequence: seq.name().to_string(),
                    k: k as u32,
                });
            }
        }
        let ratio = |k: u32| {
            fac[k as usize + 1]
                .try_div(&fac[k as usize])
                .expect("divisibility checked above")
        };
        let two_is_two = fac[2] == Factored::of(2);
        check_ratio_lemmas(
            seq.name(),
            limit,
            |k| ratio(k).is_one(),
            |k| {
                let r = ratio(k);
                if r.is_one() {
                    RatioClass::One
                } else if r == Factored::of(2) {
                    RatioClass::Two
                } else {
                    RatioClass::AtLeastThree
                }
            },
            two_is_two,
        )?;
        return Ok((2..limit).filter(|&k| ratio(k).is_one()).collect());
    }
    Ok(ratio_profile(seq, limit)?.equal_pairs)
}

/// Finite sweep of the superadditivity `f(x+y, q) >= f(x, q) + f(y, q)`
/// for all `x, y >= 1` with `x + y <= limit`.
pub fn check_concave_exponent(
    f: &dyn Fn(u64, u64) -> Natural,
    q: u64,
    limit: u64,
) -> bool {
    for x in 1..limit {
        for y in x..=(limit - x) {
            if f(x + y, q) < f(x, q) + f(y, q) {
                return false;
            }
        }
    }
    true
}

/// Outcome of the prime superadditivity sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperadditivityReport {
    /// First `(n, k)` with `p_n < p_k + p_{n-k-1}`, if any.
    pub counterexample: Option<(u64, u64)>,
    /// Binomial integrality failures of `f(n) = p_{n-1}!` up to the
    /// smaller bound.
    pub binomial_failures: Vec<(u32, u32)>,
}

/// Check `p_n >= p_k + p_{n-k-1}` for `1 <= k <= n-2`, `n <= limit`, and
/// the abstract binomials of `f(n) = p_{n-1}!` for integrality up to
/// `binomial_limit`. A counterexample would refute the inequality implied
/// by the Hardy–Littlewood convexity conjecture.
pub fn prime_superadditivity_check(limit: u64, binomial_limit: u32) -> SuperadditivityReport {
    let primes = {
        let x = limit.max(8) as f64;
        primes_up_to(((x * (x.ln() + x.ln().ln())) as u64) + 16)
    };
    let p = |i: u64| primes[(i - 1) as usize];
    let mut counterexample = None;
    'outer: for n in 2..=limit {
        for k in 1..=n.saturating_sub(2) {
            if p(n) < p(k) + p(n - k - 1) {
                counterexample = Some((n, k));
                break 'outer;
            }
        }
    }
    let report = verify_axioms(&FactorialSequence::prime_factorial_candidate(), binomial_limit);
    SuperadditivityReport {
        counterexample,
        binomial_failures: report.axiom2_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::von_mangoldt_exp;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn ordinary_passes_axioms() {
        let report = verify_axioms(&FactorialSequence::ordinary(), 50);
        assert!(report.passes());
    }

    #[test]
    fn geometric_candidate_q3_fails_axiom3() {
        // n -> q^n alone satisfies axioms 1 and 2 but not 3
        let seq = FactorialSequence::from_fn("pure-power:3", |n| nat(3).pow(n as u32));
        let report = verify_axioms(&seq, 10);
        assert!(report.axiom1_ok);
        assert!(report.axiom2_failures.is_empty());
        assert!(report.axiom3_failures.contains(&2));
        assert!(report.axiom3_failures.contains(&3)); // 6 does not divide 27
    }

    #[test]
    fn exceptional_values_match_construction() {
        let seq = FactorialSequence::exceptional(2).unwrap();
        assert_eq!(seq.value_at(0), nat(1));
        assert_eq!(seq.value_at(1), nat(1));
        assert_eq!(seq.value_at(2), nat(12));
        assert_eq!(seq.value_at(3), nat(12));
        assert_eq!(seq.value_at(4), nat(497664));
        let big: Natural = "443722221348087398400".parse().unwrap();
        assert_eq!(seq.value_at(5), big);
        assert_eq!(seq.value_at(6), seq.value_at(5));
        assert!(FactorialSequence::exceptional(1).is_err());
    }

    #[test]
    fn exceptional_factored_agrees_with_values() {
        for e in [2u32, 3] {
            let seq = FactorialSequence::exceptional(e).unwrap();
            for n in 0..=10u64 {
                assert_eq!(
                    seq.factored_at(n).unwrap().to_natural(),
                    seq.value_at(n),
                    "exceptional:{e} at {n}"
                );
            }
        }
    }

    #[test]
    fn exceptional_e3_value() {
        let seq = FactorialSequence::exceptional(3).unwrap();
        assert_eq!(seq.value_at(4), nat(71663616));
    }

    #[test]
    fn exceptional_passes_axioms_small_and_factored() {
        let seq = FactorialSequence::exceptional(2).unwrap();
        assert!(verify_axioms(&seq, 12).passes());
    }

    #[test]
    fn exceptional_ratio_pairs() {
        let seq = FactorialSequence::exceptional(2).unwrap();
        let profile = ratio_profile(&seq, 12).unwrap();
        assert_eq!(profile.equal_pairs, vec![2, 5, 8, 11]);
        assert_eq!(scan_equal_factorials(&seq, 12).unwrap(), vec![2, 5, 8, 11]);
    }

    #[test]
    fn ordinary_ratio_profile() {
        let profile = ratio_profile(&FactorialSequence::ordinary(), 20).unwrap();
        for (k, r) in profile.ratios.iter().enumerate() {
            assert_eq!(*r, nat(k as u64 + 1));
        }
        assert!(profile.equal_pairs.is_empty());
    }

    #[test]
    fn bhargava_primes_ratio_two_at_odd_k() {
        let profile = ratio_profile(&FactorialSequence::bhargava_primes(), 20).unwrap();
        for k in (1..20).step_by(2) {
            assert_eq!(profile.ratios[k], nat(2), "r_{k}");
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(&FactorialSequence::ordinary(), 4, 2).unwrap(), nat(6));
        let geo = FactorialSequence::geometric(2).unwrap();
        assert_eq!(binomial(&geo, 2, 1).unwrap(), nat(4));
        assert!(binomial(&geo, 1, 2).is_err());
    }

    #[test]
    fn semigroup_product_squares() {
        let sq = semigroup_product(&FactorialSequence::ordinary(), &FactorialSequence::ordinary());
        assert_eq!(sq.value_at(4), nat(576));
        assert!(verify_axioms(&sq, 30).passes());
    }

    #[test]
    fn knuth_wilf_identity_and_unforced() {
        let ones = FactorialSequence::knuth_wilf("kw-ones", Arc::new(|_| Natural::one()), true);
        for n in 0..=12u64 {
            assert_eq!(ones.value_at(n), factorial(n));
        }
        let ids = FactorialSequence::knuth_wilf("kw-n", Arc::new(|k| nat(k)), false);
        for n in 0..=12u64 {
            assert_eq!(ids.value_at(n), factorial(n));
        }
        assert!(verify_axioms(&ids, 20).passes());
    }

    #[test]
    fn scaled_multiple_values() {
        let b2 = FactorialSequence::scaled_multiple(2).unwrap();
        assert_eq!(b2.value_at(2), nat(6));
        assert_eq!(b2.value_at(3), nat(90));
        let b1 = FactorialSequence::scaled_multiple(1).unwrap();
        for n in 0..=10u64 {
            assert_eq!(b1.value_at(n), factorial(n));
        }
        assert!(FactorialSequence::scaled_multiple(0).is_err());
        for n in 0..=12u64 {
            assert_eq!(b2.factored_at(n).unwrap().to_natural(), b2.value_at(n));
        }
    }

    #[test]
    fn power_factorial_values() {
        let p1 = FactorialSequence::power_factorial(1).unwrap();
        assert_eq!(p1.value_at(2), nat(4));
        assert_eq!(p1.value_at(3), nat(216));
        let p2 = FactorialSequence::power_factorial(2).unwrap();
        assert_eq!(p2.value_at(2), nat(16));
        assert!(FactorialSequence::power_factorial(0).is_err());
    }

    #[test]
    fn qn_factorial_validates_hypothesis() {
        let ok = FactorialSequence::half_power_weight(40).unwrap();
        assert_eq!(ok.value_at(2), nat(2)); // 2! * q_2 = 2 * 1
        // q_n = n is not superadditive multiplicatively: q_1*q_1 = 1 | q_2 = 2,
        // but q_2*q_2 = 4 does not divide q_4 = 4? it does; use q_n = n+1 shifted
        let bad = FactorialSequence::qn_factorial(
            "bad",
            Arc::new(|n| if n == 0 { Natural::one() } else { nat(n + 1) }),
            10,
        );
        assert!(matches!(bad, Err(Error::QnHypothesis { .. })));
        let not_one = FactorialSequence::qn_factorial("bad0", Arc::new(|_| nat(7)), 4);
        assert!(not_one.is_err());
    }

    #[test]
    fn qn_binomial_power_sequence_is_valid() {
        // q_n = q^{binom(n+q-1, q)} for q = 2, i.e. 2^{n(n+1)/2}
        let seq = FactorialSequence::qn_factorial(
            "qn-binom:2",
            Arc::new(|n| nat(2).pow((n * (n + 1) / 2) as u32)),
            30,
        )
        .unwrap();
        assert!(verify_axioms(&seq, 30).passes());
    }

    #[test]
    fn bhargava_primes_small_values() {
        let seq = FactorialSequence::bhargava_primes();
        let expect = [1u64, 1, 2, 24, 48, 5760, 11520, 2903040, 5806080];
        for (n, &v) in expect.iter().enumerate() {
            assert_eq!(seq.value_at(n as u64), nat(v), "n={n}");
        }
    }

    #[test]
    fn prime_candidate_and_superadditivity() {
        let report = prime_superadditivity_check(50, 20);
        assert!(report.counterexample.is_none());
        assert!(report.binomial_failures.is_empty());
        let f = FactorialSequence::prime_factorial_candidate();
        assert_eq!(f.value_at(0), nat(1));
        assert_eq!(f.value_at(1), nat(1));
        assert_eq!(f.value_at(2), nat(2)); // p_1! = 2
        assert_eq!(f.value_at(4), nat(120)); // p_3! = 5!
    }

    #[test]
    fn concavity_examples() {
        let binom = |n: u64, q: u64| -> Natural {
            // binom(n+q-1, q)
            let mut acc = Natural::one();
            for i in 0..q {
                acc *= nat(n + q - 1 - i);
            }
            for i in 1..=q {
                acc = exact_div(&acc, &nat(i)).unwrap();
            }
            acc
        };
        assert!(check_concave_exponent(&binom, 3, 40));
        assert!(check_concave_exponent(&|n, _| nat(n), 5, 40));
        // ceil(log2(n+1)) is sublinear: fails at x = y = 2
        let f = |n: u64, _: u64| nat((n + 1).next_power_of_two().trailing_zeros() as u64);
        assert!(!check_concave_exponent(&f, 1, 10));
    }

    #[test]
    fn identity_first_factorial_determines() {
        // n!_a = (1!_a)^n * prod_{m<=n} binom(m, m-1)_a
        for seq in [
            FactorialSequence::ordinary(),
            FactorialSequence::geometric(2).unwrap(),
            FactorialSequence::scaled_multiple(2).unwrap(),
            FactorialSequence::bhargava_primes(),
        ] {
            for n in 0..=25u32 {
                let mut rhs = seq.value_at(1).pow(n);
                for m in 1..=n {
                    rhs *= binomial(&seq, m, m - 1).unwrap();
                }
                assert_eq!(rhs, seq.value_at(n as u64), "{} at {n}", seq.name());
            }
        }
    }

    #[test]
    fn h_multiplier_recovers_von_mangoldt_products() {
        // h_n of the ordinary factorial is 1
        let ord = FactorialSequence::ordinary();
        for n in 0..=20u64 {
            assert!(ord.h_at(n).unwrap().is_one());
        }
        // consistency of the arith helper used elsewhere
        assert_eq!(von_mangoldt_exp(8).unwrap(), nat(2));
    }
}
