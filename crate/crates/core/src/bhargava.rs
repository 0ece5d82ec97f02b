//! Generalized factorials of sets of integers via p-orderings: fix
//! `a_0 in X` and greedily pick `a_k` minimizing the power of `p` dividing
//! `prod_{i<k} (a_k - a_i)`. The minimized powers `nu_k(X, p)` do not
//! depend on the choices made, and `k!_X = prod_p nu_k(X, p)`.

use num_traits::One;

use crate::arith::{factorize, is_prime, primes_up_to, Factored};
use crate::error::{Error, Result};
use crate::Natural;

/// A p-ordering of a finite set together with its associated p-sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct POrdering {
    pub p: u64,
    /// The greedily chosen ordering `a_0, a_1, ...` (ties broken by
    /// smallest element value, which makes it deterministic).
    pub order: Vec<i64>,
    /// `nu[k]` = the highest power of `p` dividing
    /// `prod_{i<k} (a_k - a_i)`; `nu[0] = 1` by the empty-product
    /// convention. Invariant under the choice of `a_0`.
    pub nu: Vec<Natural>,
}

fn valuation(diff: i128, p: u64) -> u64 {
    debug_assert!(diff != 0);
    let p = p as i128;
    let mut x = diff.abs();
    let mut e = 0;
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    e
}

/// Greedy p-ordering of a finite set of distinct integers, starting from
/// `x[a0_index]`.
pub fn p_ordering(x: &[i64], p: u64, a0_index: usize) -> Result<POrdering> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if a0_index >= x.len() {
        return Err(Error::OutOfRange {
            what: "p_ordering",
            details: format!("a0 index {a0_index} out of bounds for {} elements", x.len()),
        });
    }
    let mut sorted = x.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateElement(w[0]));
        }
    }

    let mut remaining: Vec<i64> = x.to_vec();
    let mut order = vec![remaining.remove(a0_index)];
    let mut nu = vec![Natural::one()];
    while !remaining.is_empty() {
        let mut best: Option<(u64, i64)> = None;
        for &a in &remaining {
            let e: u64 = order.iter().map(|&b| valuation(a as i128 - b as i128, p)).sum();
            match best {
                Some((be, bv)) if (e, a) >= (be, bv) => {}
                _ => best = Some((e, a)),
            }
        }
        let (e, a) = best.unwrap();
        remaining.retain(|&v| v != a);
        order.push(a);
        nu.push(Natural::from(p).pow(e as u32));
    }
    Ok(POrdering { p, order, nu })
}

/// Every prime dividing some pairwise difference of `x`; all other primes
/// have `nu_k = 1` and contribute nothing to the factorial product.
fn relevant_primes(x: &[i64]) -> Result<Vec<u64>> {
    let mut primes = std::collections::BTreeSet::new();
    for i in 0..x.len() {
        for j in 0..i {
            let d = (x[i] as i128 - x[j] as i128).unsigned_abs();
            let d: u64 = d.try_into().map_err(|_| Error::OutOfRange {
                what: "bhargava set",
                details: "pairwise difference exceeds u64".into(),
            })?;
            if d > 1 {
                for (p, _) in factorize(d) {
                    primes.insert(p);
                }
            }
        }
    }
    Ok(primes.into_iter().collect())
}

/// `k!_X = prod_p nu_k(X, p)` for a finite set of distinct integers,
/// restricted to `k < |X|`.
pub fn bhargava_factorial_finite(x: &[i64], k: usize) -> Result<Natural> {
    if k >= x.len() {
        return Err(Error::OutOfRange {
            what: "bhargava_factorial_finite",
            details: format!("k = {k} must be below the set size {}", x.len()),
        });
    }
    let mut out = Natural::one();
    for p in relevant_primes(x)? {
        let ordering = p_ordering(x, p, 0)?;
        out *= &ordering.nu[k];
    }
    Ok(out)
}

/// Bhargava's factorial for the set of primes, in factored form:
/// `prod_p p^{sum_{m>=0} floor((n-1) / (p^m (p-1)))}`.
pub fn bhargava_primes_factored(n: u64) -> Factored {
    let mut out = Factored::one();
    if n <= 1 {
        return out;
    }
    for p in primes_up_to(n) {
        let mut e = 0u64;
        let mut q = p - 1;
        while q <= n - 1 {
            e += (n - 1) / q;
            match q.checked_mul(p) {
                Some(next) if next <= n - 1 => q = next,
                _ => break,
            }
        }
        if e > 0 {
            out.mul_prime_power(p, &Natural::from(e));
        }
    }
    out
}

/// Closed-form factorial for the set of primes (finite product; factors
/// vanish once `p - 1 > n - 1`).
pub fn bhargava_primes_closed_form(n: u64) -> Result<Natural> {
    if n == 0 {
        return Err(Error::ZeroArgument("bhargava_primes_closed_form argument"));
    }
    Ok(bhargava_primes_factored(n).to_natural())
}

/// Factorial of the geometric set `{q^n : n >= 0}`:
/// `n!_X = prod_{k=1}^{n} (q^n - q^{k-1})`.
pub fn bhargava_qpow_closed_form(q: u64, n: u64) -> Result<Natural> {
    if q < 2 {
        return Err(Error::OutOfRange {
            what: "bhargava_qpow_closed_form",
            details: format!("q must be at least 2, got {q}"),
        });
    }
    let qn = Natural::from(q).pow(n as u32);
    let mut out = Natural::one();
    for k in 1..=n {
        out *= &qn - Natural::from(q).pow((k - 1) as u32);
    }
    Ok(out)
}
