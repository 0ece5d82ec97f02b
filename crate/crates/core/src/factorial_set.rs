//! Factorial sets: from a primitive sequence `b_1, b_2, ...` of nonzero
//! integers, the set `B_0 = 1`, `B_n = prod_{i<=n} |b_i|^{floor(n/i)}`,
//! which satisfies `B_i B_j | B_n` for every split `i + j = n`. Includes
//! the inverse direction (recovering a primitive from an abstract
//! factorial) and the prime-product primitive of the shifted Bhargava
//! factorial for the set of primes.

use std::sync::{Arc, Mutex};

use num_bigint::Sign;
use num_traits::{One, Signed, Zero};

use crate::arith::{exact_div, factorial, nth_prime, representations_pm, von_mangoldt_exp};
use crate::error::{Error, Result};
use crate::factorial::FactorialSequence;
use crate::{Int, Natural, Rational};

enum Terms {
    Finite(Vec<Int>),
    Lazy {
        memo: Mutex<Vec<Int>>,
        gen: Box<dyn Fn(u64) -> Int + Send + Sync>,
    },
}

/// Ordered sequence `b_1, b_2, ...` of nonzero integers (repetitions
/// allowed), the raw material of a factorial set. Terms are 1-indexed.
pub struct PrimitiveSequence {
    name: String,
    terms: Terms,
}

impl std::fmt::Debug for PrimitiveSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PrimitiveSequence")
            .field("name", &self.name)
            .finish()
    }
}

impl PrimitiveSequence {
    /// Finite primitive from explicit terms; zero terms are rejected.
    pub fn from_terms(name: impl Into<String>, terms: Vec<Int>) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if t.is_zero() {
                return Err(Error::ZeroPrimitiveTerm {
                    index: i as u32 + 1,
                });
            }
        }
        Ok(PrimitiveSequence {
            name: name.into(),
            terms: Terms::Finite(terms),
        })
    }

    /// Unbounded primitive from a 1-indexed generator.
    pub fn from_fn(
        name: impl Into<String>,
        gen: impl Fn(u64) -> Int + Send + Sync + 'static,
    ) -> Self {
        PrimitiveSequence {
            name: name.into(),
            terms: Terms::Lazy {
                memo: Mutex::new(Vec::new()),
                gen: Box::new(gen),
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of terms for finite primitives.
    pub fn len(&self) -> Option<u64> {
        match &self.terms {
            Terms::Finite(v) => Some(v.len() as u64),
            Terms::Lazy { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// `b_i`, 1-indexed. Errors past the end of a finite primitive and on
    /// zero terms from a generator.
    pub fn term(&self, i: u64) -> Result<Int> {
        if i == 0 {
            return Err(Error::ZeroArgument("primitive index"));
        }
        let t = match &self.terms {
            Terms::Finite(v) => {
                v.get(i as usize - 1)
                    .cloned()
                    .ok_or_else(|| Error::OutOfRange {
                        what: "primitive term",
                        details: format!("index {i} exceeds length {}", v.len()),
                    })?
            }
            Terms::Lazy { memo, gen } => {
                let mut memo = memo.lock().unwrap();
                while (memo.len() as u64) < i {
                    let next = gen(memo.len() as u64 + 1);
                    memo.push(next);
                }
                memo[i as usize - 1].clone()
            }
        };
        if t.is_zero() {
            return Err(Error::ZeroPrimitiveTerm { index: i as u32 });
        }
        Ok(t)
    }

    /// `|b_i|` as a natural number.
    pub fn abs_term(&self, i: u64) -> Result<Natural> {
        Ok(self.term(i)?.abs().to_biguint().unwrap())
    }

    /// The ascending primes `2, 3, 5, ...`.
    pub fn primes() -> Self {
        Self::from_fn("primes", |i| Int::from(nth_prime(i).expect("i >= 1")))
    }

    /// The positive integers `1, 2, 3, ...`.
    pub fn positive_integers() -> Self {
        Self::from_fn("integers", |i| Int::from(i))
    }

    /// All-ones primitive.
    pub fn ones() -> Self {
        Self::from_fn("ones", |_| Int::one())
    }

    /// Constant primitive `q, q, q, ...`.
    pub fn constant(q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroPrimitiveTerm { index: 1 });
        }
        Ok(Self::from_fn(format!("constant:{q}"), move |_| Int::from(q)))
    }

    /// `b_i = q^{i^k}`; `k = 1` gives the geometric primitive whose
    /// factorial set has exponents `sum sigma(i)`, `k = 2` the
    /// `sum sigma_2(i)` one.
    pub fn power_tower(q: u64, k: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroPrimitiveTerm { index: 1 });
        }
        Ok(Self::from_fn(format!("powers:{q}^i^{k}"), move |i| {
            Int::from(Natural::from(q).pow(i.pow(k) as u32))
        }))
    }

    /// `b_i = e^{Lambda(i)}`: the primitive of the ordinary factorial.
    pub fn von_mangoldt() -> Self {
        Self::from_fn("von-mangoldt", |i| {
            Int::from(von_mangoldt_exp(i).expect("i >= 1"))
        })
    }

    /// `b_i = prod of the primes p with i = p^m (p-1)`: the primitive of
    /// the shifted Bhargava prime factorial.
    pub fn bhargava_primes() -> Self {
        Self::from_fn("bhargava-prime-primitive", |i| {
            Int::from(bhargava_prime_primitive(i).expect("i >= 1"))
        })
    }
}

/// `b_i` of the prime-product primitive: `2` at `i = 1`, otherwise the
/// product of every prime `p` admitting a representation `i = p^m (p-1)`
/// (`1` when there is none). Each value is a product of at most two
/// primes; recovering a primitive from the shifted Bhargava prime
/// factorial reproduces exactly these terms.
pub fn bhargava_prime_primitive(i: u64) -> Result<Natural> {
    let reps = representations_pm(i)?;
    let mut out = Natural::one();
    for (p, _) in reps {
        out *= Natural::from(p);
    }
    Ok(out)
}

struct SetInner {
    primitive: PrimitiveSequence,
    elements: Mutex<Vec<Natural>>,
}

/// A factorial set: `B_0 = 1` and `B_n = prod_{i=1}^{n} |b_i|^{floor(n/i)}`
/// over a primitive sequence, computed on demand.
#[derive(Clone)]
pub struct FactorialSet {
    inner: Arc<SetInner>,
}

impl std::fmt::Debug for FactorialSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FactorialSet")
            .field("primitive", &self.inner.primitive.name())
            .finish()
    }
}

/// Build the factorial set of a primitive via the closed form, validating
/// terms up to `to`.
pub fn build_closed_form(primitive: PrimitiveSequence, to: u64) -> Result<FactorialSet> {
    let set = FactorialSet {
        inner: Arc::new(SetInner {
            primitive,
            elements: Mutex::new(vec![Natural::one()]),
        }),
    };
    set.element_at(to)?;
    Ok(set)
}

impl FactorialSet {
    pub fn primitive(&self) -> &PrimitiveSequence {
        &self.inner.primitive
    }

    /// `B_n` via the closed form.
    pub fn element_at(&self, n: u64) -> Result<Natural> {
        let mut elements = self.inner.elements.lock().unwrap();
        while (elements.len() as u64) <= n {
            let m = elements.len() as u64;
            let mut acc = Natural::one();
            for i in 1..=m {
                acc *= self.inner.primitive.abs_term(i)?.pow((m / i) as u32);
            }
            elements.push(acc);
        }
        Ok(elements[n as usize].clone())
    }

    /// `B_0 ..= B_n`.
    pub fn elements_to(&self, n: u64) -> Result<Vec<Natural>> {
        self.element_at(n)?;
        Ok(self.inner.elements.lock().unwrap()[..=n as usize].to_vec())
    }

    /// View the set as the sequence `n -> B_n`. Intended for self-factorial
    /// sets, where this is an abstract factorial. Panics if the primitive
    /// cannot supply the requested depth.
    pub fn as_sequence(&self) -> FactorialSequence {
        let set = self.clone();
        FactorialSequence::from_fn(
            format!("set:{}", self.inner.primitive.name()),
            move |n| set.element_at(n).expect("primitive too short for query"),
        )
    }
}

/// Independent oracle for the closed form: computes the componentwise
/// minimal formal exponent vector `alpha(n)` with `alpha_k(n) >= 1` for
/// `k <= n` and `alpha(i) + alpha(j) <= alpha(n)` for every split
/// `i + j = n`, then evaluates `B_n = prod |b_k|^{alpha_k(n)}` and checks
/// `B_i B_j | B_n` on the actual values. Exponents of unit terms carry no
/// value information, so minimality is taken over the formal vectors.
/// Capped at `to <= 30`.
pub fn build_by_construction(primitive: &PrimitiveSequence, to: u64) -> Result<Vec<Natural>> {
    if to > 30 {
        return Err(Error::OutOfRange {
            what: "build_by_construction",
            details: format!("oracle is capped at N = 30, got {to}"),
        });
    }
    let n = to as usize;
    // alpha[m][k-1] = exponent of b_k in B_m
    let mut alpha: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    let mut values: Vec<Natural> = vec![Natural::one()];
    for m in 1..=n {
        let mut exps = vec![1u64; m];
        for i in 1..=m / 2 {
            let j = m - i;
            for k in 0..m {
                let need = alpha[i].get(k).copied().unwrap_or(0)
                    + alpha[j].get(k).copied().unwrap_or(0);
                if exps[k] < need {
                    exps[k] = need;
                }
            }
        }
        let mut v = Natural::one();
        for (k, &e) in exps.iter().enumerate() {
            v *= primitive.abs_term(k as u64 + 1)?.pow(e as u32);
        }
        for i in 1..=m / 2 {
            let prod = &values[i] * &values[m - i];
            if exact_div(&v, &prod).is_none() {
                return Err(Error::NotDivisible {
                    num: v.to_string(),
                    den: prod.to_string(),
                });
            }
        }
        alpha[m] = exps;
        values.push(v);
    }
    Ok(values)
}

/// The quotient `B_n / (B_k B_{n-k})` written as `prod b_j^{alpha_j}`
/// with every `alpha_j` in `{0, 1}`: `alpha_j = 1` exactly when adding
/// `k` and `n - k` in base `j` carries in the least digit. The vector is
/// cross-checked against the actual quotient by exact division.
/// `result[j-1]` is the exponent of `b_j`.
pub fn binomial_exponents(set: &FactorialSet, n: u64, k: u64) -> Result<Vec<u8>> {
    if k > n {
        return Err(Error::OutOfRange {
            what: "binomial_exponents",
            details: format!("k={k} exceeds n={n}"),
        });
    }
    let kk = k.max(n - k);
    let mut alpha = vec![0u8; n as usize];
    for j in 1..=n {
        let carry = n % j < kk % j;
        if j >= kk + 2 || carry {
            alpha[j as usize - 1] = 1;
        }
        debug_assert!(
            j < kk + 2 || carry,
            "digit rule must give 1 on the tail range"
        );
    }
    // cross-check: B_k * B_{n-k} * prod b_j^{alpha_j} == B_n
    let mut rhs = set.element_at(k)? * set.element_at(n - k)?;
    for j in 1..=n {
        if alpha[j as usize - 1] == 1 {
            rhs *= set.primitive().abs_term(j)?;
        }
    }
    let lhs = set.element_at(n)?;
    if lhs != rhs {
        return Err(Error::NotDivisible {
            num: lhs.to_string(),
            den: rhs.to_string(),
        });
    }
    Ok(alpha)
}

/// Result of a self-factorial sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfFactorialReport {
    pub checked_to: u64,
    /// Smallest `n` with `n!` not dividing `B_n`, if any.
    pub first_failure: Option<u64>,
}

impl SelfFactorialReport {
    pub fn is_self_factorial(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Check `n! | B_n` for `1 <= n <= limit`.
pub fn is_self_factorial(set: &FactorialSet, limit: u64) -> Result<SelfFactorialReport> {
    let mut first_failure = None;
    for n in 1..=limit {
        if exact_div(&set.element_at(n)?, &factorial(n)).is_none() {
            first_failure = Some(n);
            break;
        }
    }
    Ok(SelfFactorialReport {
        checked_to: limit,
        first_failure,
    })
}

/// The factorial set whose primitive is `B_1, B_2, ...` of a
/// self-factorial set; the result is again self-factorial. Errors when
/// the input is not self-factorial up to `limit`.
pub fn iterate_factorial_set(set: &FactorialSet, limit: u64) -> Result<FactorialSet> {
    let report = is_self_factorial(set, limit)?;
    if let Some(n) = report.first_failure {
        return Err(Error::NotSelfFactorial { n: n as u32 });
    }
    let base = set.clone();
    let primitive = PrimitiveSequence::from_fn(
        format!("iterated:{}", set.primitive().name()),
        move |i| Int::from(base.element_at(i).expect("primitive too short")),
    );
    build_closed_form(primitive, limit)
}

/// The abstract factorial `n!_a = n! * B_1 B_2 ... B_{n+k}` attached to a
/// factorial set with offset `k`.
pub fn offset_factorial(set: &FactorialSet, k: u64) -> FactorialSequence {
    let base = set.clone();
    FactorialSequence::from_gen(
        format!("offset:{}:{k}", set.primitive().name()),
        Box::new(move |n, prev| {
            let n = n as u64;
            match n {
                0 => Natural::one(),
                1 => {
                    let mut acc = Natural::one();
                    for i in 1..=k + 1 {
                        acc *= base.element_at(i).expect("primitive too short");
                    }
                    acc
                }
                _ => {
                    // ratio from the previous value: * n * B_{n+k}
                    let prev = &prev[n as usize - 1];
                    prev * Natural::from(n) * base.element_at(n + k).expect("primitive too short")
                }
            }
        }),
    )
}

/// Outcome of primitive recovery: the recovered terms, and the first
/// non-integral quotient when the sequence has no primitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveRecovery {
    /// `b_1 ..= b_m` recovered before any failure (1-indexed as terms).
    pub terms: Vec<Natural>,
    /// `(n, exact value of b_n)` at the first non-integral term.
    pub failure: Option<(u32, Rational)>,
}

impl PrimitiveRecovery {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }
}

/// Recover a primitive from an abstract factorial: `b_1 = 1!_a` and
/// `b_n = n!_a / prod_{i<n} b_i^{floor(n/i)}` while the quotient stays
/// integral. The first non-integral quotient is reported exactly.
pub fn recover_primitive(seq: &FactorialSequence, limit: u64) -> PrimitiveRecovery {
    let mut terms: Vec<Natural> = Vec::new();
    if limit >= 1 {
        terms.push(seq.value_at(1));
    }
    for n in 2..=limit {
        let mut den = Natural::one();
        for (idx, b) in terms.iter().enumerate() {
            den *= b.pow((n / (idx as u64 + 1)) as u32);
        }
        let num = seq.value_at(n);
        match exact_div(&num, &den) {
            Some(b) => terms.push(b),
            None => {
                let value = Rational::new(Int::from(num), Int::from(den));
                debug_assert_eq!(value.denom().sign(), Sign::Plus);
                return PrimitiveRecovery {
                    terms,
                    failure: Some((n as u32, value)),
                };
            }
        }
    }
    PrimitiveRecovery {
        terms,
        failure: None,
    }
}
