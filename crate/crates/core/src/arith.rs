//! Arbitrary-precision integers, prime sieves, and the arithmetic functions
//! consumed by the rest of the crate: divisor sums, the Von Mangoldt
//! exponential, Legendre's prime valuation of `n!`, cumulative divisor
//! products, and the `n = p^m (p-1)` representation search.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Natural;

/// Ascending table of all primes up to a fixed limit.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Sieve of Eratosthenes up to `limit` (inclusive).
    pub fn new(limit: u64) -> Self {
        PrimeTable {
            limit,
            primes: primes_up_to(limit),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The `i`-th prime, 1-indexed (`nth(1) = 2`). `None` past the table.
    pub fn nth(&self, i: usize) -> Option<u64> {
        if i == 0 {
            return None;
        }
        self.primes.get(i - 1).copied()
    }

    /// Membership test; only valid for `n <= limit`.
    pub fn contains(&self, n: u64) -> bool {
        debug_assert!(n <= self.limit);
        self.primes.binary_search(&n).is_ok()
    }
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for `u64` (the 12 standard witnesses).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    loop {
        if is_prime(c) {
            return c;
        }
        c += 1;
    }
}

/// Largest prime `<= n` (n >= 2).
pub fn prev_prime(n: u64) -> u64 {
    assert!(n >= 2, "no prime below 2");
    let mut c = n;
    loop {
        if is_prime(c) {
            return c;
        }
        c -= 1;
    }
}

/// The `n`-th prime, 1-indexed: `nth_prime(1) = 2`.
pub fn nth_prime(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument("prime index"));
    }
    // Rosser-type upper bound for p_n, generous for small n.
    let bound = if n < 6 {
        13
    } else {
        let x = n as f64;
        (x * (x.ln() + x.ln().ln())) as u64 + 16
    };
    let primes = primes_up_to(bound);
    Ok(primes[(n - 1) as usize])
}

/// Prime factorization of a `u64` by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor 0");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// d(n), the number of positive divisors.
pub fn divisor_count(n: u64) -> Result<Natural> {
    if n == 0 {
        return Err(Error::ZeroArgument("divisor_count argument"));
    }
    let d: u64 = factorize(n).iter().map(|&(_, e)| (e as u64) + 1).product();
    Ok(Natural::from(d))
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0);
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// `sigma_k(n)`, the sum of the k-th powers of the divisors of `n`.
/// `sigma_0 = d`.
pub fn divisor_power_sum(k: u32, n: u64) -> Result<Natural> {
    if n == 0 {
        return Err(Error::ZeroArgument("divisor_power_sum argument"));
    }
    let mut total = Natural::zero();
    for d in divisors(n) {
        total += Natural::from(d).pow(k);
    }
    Ok(total)
}

/// Prefix sums `S[n] = sum_{i=1}^{n} sigma_k(i)` for `n <= limit`, via a
/// divisor sieve. `S[0] = 0`.
pub fn summatory_sigma_prefix(k: u32, limit: u64) -> Vec<Natural> {
    let n = limit as usize;
    let mut sig = vec![Natural::zero(); n + 1];
    for i in 1..=n {
        let ik = Natural::from(i as u64).pow(k);
        let mut j = i;
        while j <= n {
            sig[j] += &ik;
            j += i;
        }
    }
    let mut acc = Natural::zero();
    for s in sig.iter_mut() {
        acc += &*s;
        *s = acc.clone();
    }
    sig
}

/// `sum_{i=1}^{n} sigma_k(i)`, computed both as a direct sum of divisor
/// power sums and as `sum_{i=1}^{n} i^k floor(n/i)`; the two routes must
/// agree (Hermite's identity) and the shared value is returned.
pub fn summatory_sigma(k: u32, n: u64) -> Result<Natural> {
    if n == 0 {
        return Err(Error::ZeroArgument("summatory_sigma argument"));
    }
    let mut direct = Natural::zero();
    for i in 1..=n {
        direct += divisor_power_sum(k, i)?;
    }
    let mut floored = Natural::zero();
    for i in 1..=n {
        floored += Natural::from(i).pow(k) * Natural::from(n / i);
    }
    assert_eq!(direct, floored, "Hermite identity failed at k={k}, n={n}");
    Ok(direct)
}

/// `e^{Lambda(n)}` as an integer: `p` when `n = p^m` for a prime `p` and
/// `m >= 1`, otherwise `1`.
pub fn von_mangoldt_exp(n: u64) -> Result<Natural> {
    if n == 0 {
        return Err(Error::ZeroArgument("von_mangoldt_exp argument"));
    }
    let f = factorize(n);
    if f.len() == 1 && n > 1 {
        Ok(Natural::from(f[0].0))
    } else {
        Ok(Natural::one())
    }
}

/// The cumulative product `alpha(n)` of all divisors of all `m <= n`,
/// computed three independent ways with asserted agreement:
/// `prod i^{floor(n/i)}`, `prod_k floor(n/k)!`, and the direct divisor
/// product.
pub fn cumulative_divisor_product(n: u64) -> Result<Natural> {
    if n == 0 {
        return Err(Error::ZeroArgument("cumulative_divisor_product argument"));
    }
    let a = cumulative_divisor_product_unchecked(n);

    let mut b = Natural::one();
    for k in 1..=n {
        b *= factorial(n / k);
    }

    let mut c = Natural::one();
    for m in 1..=n {
        for d in divisors(m) {
            c *= Natural::from(d);
        }
    }

    assert_eq!(a, b, "cumulative product routes (a),(b) disagree at n={n}");
    assert_eq!(a, c, "cumulative product routes (a),(c) disagree at n={n}");
    Ok(a)
}

/// `prod_{i<=n} i^{floor(n/i)}` without the cross-checks.
pub fn cumulative_divisor_product_unchecked(n: u64) -> Natural {
    let mut a = Natural::one();
    for i in 1..=n {
        a *= Natural::from(i).pow((n / i) as u32);
    }
    a
}

/// Legendre's formula: the exponent of the prime `p` in `n!`.
pub fn legendre_valuation(n: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut total = 0u64;
    let mut q = p;
    loop {
        total += n / q;
        match q.checked_mul(p) {
            Some(next) if next <= n => q = next,
            _ => break,
        }
    }
    Ok(total)
}

/// All representations `n = p^m (p-1)` with `p` prime, `m >= 0`.
///
/// Candidates come from divisors `d | n` with `d + 1` prime and `n/d` a
/// power of `d + 1`; this bounds the search by `p <= n + 1`. There are at
/// most two representations, which is asserted.
pub fn representations_pm(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::ZeroArgument("representations_pm argument"));
    }
    let mut out = Vec::new();
    for d in divisors(n) {
        let p = d + 1;
        if !is_prime(p) {
            continue;
        }
        let mut q = n / d;
        let mut m = 0u32;
        while q % p == 0 {
            q /= p;
            m += 1;
        }
        if q == 1 {
            out.push((p, m));
        }
    }
    out.sort_unstable();
    assert!(
        out.len() <= 2,
        "more than two representations of {n} = p^m (p-1): {out:?}"
    );
    Ok(out)
}

/// Number of `p^m (p-1)` representations for every `n <= limit`, by
/// enumerating `(p, m)` pairs; index 0 is unused.
pub fn representation_counts_up_to(limit: u64) -> Vec<u8> {
    let mut counts = vec![0u8; limit as usize + 1];
    for p in primes_up_to(limit + 1) {
        let mut x = p - 1;
        loop {
            if x >= 1 && x <= limit {
                counts[x as usize] += 1;
            }
            match x.checked_mul(p) {
                Some(next) if next <= limit => x = next,
                _ => break,
            }
        }
    }
    counts
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> Natural {
    let mut acc = Natural::one();
    for i in 2..=n {
        acc *= Natural::from(i);
    }
    acc
}

/// Quotient of an exact division, or `None` when the division has a
/// remainder.
pub fn exact_div(num: &Natural, den: &Natural) -> Option<Natural> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

/// A positive integer kept in factored form `prod p^e`, with
/// arbitrary-precision exponents. Used where values are astronomically
/// large but divisibility questions stay cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    factors: BTreeMap<u64, Natural>,
}

impl Factored {
    pub fn one() -> Self {
        Factored {
            factors: BTreeMap::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn from_factorization(f: &[(u64, u32)]) -> Self {
        let mut factors = BTreeMap::new();
        for &(p, e) in f {
            if e > 0 {
                factors.insert(p, Natural::from(e));
            }
        }
        Factored { factors }
    }

    /// Factor a small value by trial division.
    pub fn of(n: u64) -> Self {
        Self::from_factorization(&factorize(n))
    }

    pub fn exponent_of(&self, p: u64) -> Natural {
        self.factors.get(&p).cloned().unwrap_or_else(Natural::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u64, &Natural)> {
        self.factors.iter()
    }

    pub fn mul(&self, rhs: &Factored) -> Factored {
        let mut out = self.factors.clone();
        for (&p, e) in &rhs.factors {
            *out.entry(p).or_insert_with(Natural::zero) += e;
        }
        Factored { factors: out }
    }

    pub fn mul_prime_power(&mut self, p: u64, e: &Natural) {
        if e.is_zero() {
            return;
        }
        *self.factors.entry(p).or_insert_with(Natural::zero) += e;
    }

    /// Multiply by `self^k`-style scaling: raises every exponent by factor `k`.
    pub fn pow(&self, k: u32) -> Factored {
        if k == 0 {
            return Factored::one();
        }
        let factors = self
            .factors
            .iter()
            .map(|(&p, e)| (p, e * Natural::from(k)))
            .collect();
        Factored { factors }
    }

    /// True when `self` divides `rhs`.
    pub fn divides(&self, rhs: &Factored) -> bool {
        self.factors
            .iter()
            .all(|(p, e)| &rhs.exponent_of(*p) >= e)
    }

    /// Exact quotient `self / rhs`, or `None` if not divisible.
    pub fn try_div(&self, rhs: &Factored) -> Option<Factored> {
        let mut out = self.factors.clone();
        for (&p, e) in &rhs.factors {
            let have = out.remove(&p)?;
            if &have < e {
                return None;
            }
            let left = have - e;
            if !left.is_zero() {
                out.insert(p, left);
            }
        }
        Some(Factored { factors: out })
    }

    /// Materialize the value. Exponents must fit `u32`.
    pub fn to_natural(&self) -> Natural {
        let mut acc = Natural::one();
        for (&p, e) in &self.factors {
            let e: u32 = e.try_into().expect("factored exponent exceeds u32");
            acc *= Natural::from(p).pow(e);
        }
        acc
    }
}

/// `n!` in factored form via Legendre's formula.
pub fn factored_factorial(n: u64) -> Factored {
    let mut factors = BTreeMap::new();
    for p in primes_up_to(n) {
        let e = legendre_valuation(n, p).expect("sieve produced a composite");
        factors.insert(p, Natural::from(e));
    }
    Factored { factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_count_small() {
        assert_eq!(divisor_count(1).unwrap(), Natural::from(1u32));
        assert_eq!(divisor_count(12).unwrap(), Natural::from(6u32));
        assert_eq!(divisor_count(6).unwrap(), Natural::from(4u32));
        assert!(divisor_count(0).is_err());
    }

    #[test]
    fn divisor_power_sum_small() {
        assert_eq!(divisor_power_sum(1, 6).unwrap(), Natural::from(12u32));
        assert_eq!(divisor_power_sum(0, 9).unwrap(), Natural::from(3u32));
        assert_eq!(divisor_power_sum(2, 2).unwrap(), Natural::from(5u32));
    }

    #[test]
    fn summatory_sigma_paper_values() {
        assert_eq!(summatory_sigma(0, 12).unwrap(), Natural::from(35u32));
        assert_eq!(summatory_sigma(1, 11).unwrap(), Natural::from(99u32));
        assert_eq!(summatory_sigma(2, 5).unwrap(), Natural::from(63u32));
    }

    #[test]
    fn summatory_prefix_matches_pointwise() {
        let pre = summatory_sigma_prefix(1, 50);
        for n in 1..=50u64 {
            assert_eq!(pre[n as usize], summatory_sigma(1, n).unwrap());
        }
    }

    #[test]
    fn von_mangoldt_cases() {
        assert_eq!(von_mangoldt_exp(1).unwrap(), Natural::from(1u32));
        assert_eq!(von_mangoldt_exp(8).unwrap(), Natural::from(2u32));
        assert_eq!(von_mangoldt_exp(6).unwrap(), Natural::from(1u32));
        assert_eq!(von_mangoldt_exp(17).unwrap(), Natural::from(17u32));
    }

    #[test]
    fn cumulative_product_values() {
        assert_eq!(cumulative_divisor_product(1).unwrap(), Natural::from(1u32));
        assert_eq!(cumulative_divisor_product(4).unwrap(), Natural::from(48u32));
        assert_eq!(
            cumulative_divisor_product(10).unwrap(),
            Natural::from(10450944000u64)
        );
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre_valuation(10, 2).unwrap(), 8);
        assert_eq!(legendre_valuation(0, 3).unwrap(), 0);
        assert_eq!(legendre_valuation(6, 5).unwrap(), 1);
        assert!(legendre_valuation(10, 4).is_err());
    }

    #[test]
    fn legendre_reconstructs_factorial() {
        for n in 0..=200u64 {
            let mut prod = Natural::one();
            for p in primes_up_to(n.max(1)) {
                prod *= Natural::from(p).pow(legendre_valuation(n, p).unwrap() as u32);
            }
            assert_eq!(prod, factorial(n), "prime factorization of {n}!");
        }
    }

    #[test]
    fn representations_examples() {
        assert_eq!(representations_pm(4).unwrap(), vec![(2, 2), (5, 0)]);
        assert_eq!(representations_pm(7).unwrap(), vec![]);
        assert_eq!(representations_pm(6).unwrap(), vec![(3, 1), (7, 0)]);
        assert!(representations_pm(0).is_err());
    }

    #[test]
    fn representation_counts_agree_with_search() {
        let counts = representation_counts_up_to(2000);
        for n in 1..=2000u64 {
            let reps = representations_pm(n).unwrap();
            assert_eq!(counts[n as usize] as usize, reps.len(), "n={n}");
        }
    }

    #[test]
    fn nth_prime_values() {
        assert_eq!(nth_prime(1).unwrap(), 2);
        assert_eq!(nth_prime(4).unwrap(), 7);
        assert_eq!(nth_prime(25).unwrap(), 97);
        assert!(nth_prime(0).is_err());
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let table = PrimeTable::new(10_000);
        for n in 0..=10_000u64 {
            assert_eq!(is_prime(n), table.contains(n), "n={n}");
        }
    }

    #[test]
    fn factored_roundtrip_and_division() {
        let a = Factored::of(720);
        assert_eq!(a.to_natural(), Natural::from(720u32));
        let b = Factored::of(48);
        let q = a.try_div(&b).unwrap();
        assert_eq!(q.to_natural(), Natural::from(15u32));
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
        assert!(a.try_div(&Factored::of(7)).is_none());
    }

    #[test]
    fn factored_factorial_matches() {
        for n in [0u64, 1, 2, 10, 50] {
            assert_eq!(factored_factorial(n).to_natural(), factorial(n));
        }
    }
}
