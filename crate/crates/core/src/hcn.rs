//! Highly composite numbers (hcn): `n` with `d(m) < d(n)` for all
//! `m < n`.
//!
//! Ground truth at desk scale is a divisor-count record scan
//! ([`hcn_up_to`]). Past the scan limit, two structured tools take over,
//! both resting on Ramanujan's structure theorem (an hcn factors over
//! consecutive primes `2^{a_2} 3^{a_3} ... p^{a_p}` with non-increasing
//! exponents, and `floor(log p / log l) <= a_l <= 2 floor(log P / log l)`
//! for every prime `l <= p`, `P` the prime after `p`):
//!
//! - an ascending search over structured exponent vectors that certifies
//!   hcn-hood by maximizing `d` below the candidate
//!   ([`find_hcn_with_factorial_divisor`]), and
//! - superior highly composite numbers, whose exponent profile
//!   `a_p = floor(1 / (p^t - 1))` for a threshold parameter `t` is
//!   computable to any size and which are always hcn
//!   ([`minimal_dominating_superior`]).

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_traits::One;

use crate::arith::{
    factorial, factorize, legendre_valuation, next_prime, prev_prime, primes_up_to,
};
use crate::error::{Error, Result};
use crate::lncmp::cmp_ln_products;
use crate::{Int, Natural, Rational};

/// One record-setting entry of the scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HcnEntry {
    pub n: u64,
    pub d: u64,
}

/// Ascending list of all hcn up to a limit, with their divisor counts.
#[derive(Debug, Clone)]
pub struct HcnList {
    limit: u64,
    entries: Vec<HcnEntry>,
}

impl HcnList {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn entries(&self) -> &[HcnEntry] {
        &self.entries
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|e| e.n)
    }

    /// Membership test, only meaningful for `n <= limit`.
    pub fn contains(&self, n: u64) -> bool {
        self.entries.binary_search_by_key(&n, |e| e.n).is_ok()
    }
}

/// All hcn `<= limit` by divisor-count record scan (segmented
/// divisor-pair sieve). Every entry is validated against the
/// consecutive-prime structure.
pub fn hcn_up_to(limit: u64) -> Result<HcnList> {
    if limit == 0 {
        return Err(Error::ZeroArgument("hcn limit"));
    }
    const BLOCK: u64 = 1 << 20;
    let mut entries: Vec<HcnEntry> = Vec::new();
    let mut best = 0u64;
    let mut lo = 1u64;
    let mut counts: Vec<u32> = Vec::new();
    while lo <= limit {
        let hi = (lo + BLOCK - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        counts.clear();
        counts.resize(len, 0);
        let mut a = 1u64;
        while a * a <= hi {
            let mut m = (lo + a - 1) / a * a;
            if m < a * a {
                m = a * a;
            }
            while m <= hi {
                counts[(m - lo) as usize] += if m == a * a { 1 } else { 2 };
                m += a;
            }
            a += 1;
        }
        for (i, &c) in counts.iter().enumerate() {
            if c as u64 > best {
                best = c as u64;
                let n = lo + i as u64;
                hcn_structure(n)?;
                entries.push(HcnEntry { n, d: best });
            }
        }
        lo = hi + 1;
    }
    Ok(HcnList { limit, entries })
}

/// Largest `t >= 0` with `base^t <= x`.
fn ilog(x: u64, base: u64) -> u64 {
    debug_assert!(base >= 2);
    let mut t = 0;
    let mut v = base;
    while v <= x {
        t += 1;
        match v.checked_mul(base) {
            Some(next) => v = next,
            None => break,
        }
    }
    t
}

/// Validate the hcn factorization shape: consecutive primes from 2,
/// non-increasing exponents, and final exponent 1 (2 is allowed for the
/// classical exceptions 4 and 36). Returns the factorization.
pub fn hcn_structure(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::ZeroArgument("hcn candidate"));
    }
    let f = factorize(n);
    let mut expected = 2u64;
    for &(p, _) in &f {
        if p != expected {
            return Err(Error::OutOfRange {
                what: "hcn structure",
                details: format!("{n} skips prime {expected}"),
            });
        }
        expected = next_prime(expected);
    }
    for w in f.windows(2) {
        if w[0].1 < w[1].1 {
            return Err(Error::OutOfRange {
                what: "hcn structure",
                details: format!("{n} has increasing exponents at {}", w[1].0),
            });
        }
    }
    if let Some(&(_, last)) = f.last() {
        if last != 1 && n != 4 && n != 36 {
            return Err(Error::OutOfRange {
                what: "hcn structure",
                details: format!("{n} ends in exponent {last}"),
            });
        }
    }
    Ok(f)
}

/// One verified exponent bound `lower <= a_lambda <= upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentBound {
    pub lambda: u64,
    pub lower: u64,
    pub exponent: u32,
    pub upper: u64,
}

/// Verify `floor(log p / log l) <= a_l <= 2 floor(log P / log l)` for
/// every prime `l` dividing the hcn `n`. A violation is reported as an
/// error, since it would mean `n` is not an hcn at all.
pub fn ramanujan_exponent_bounds(n: u64) -> Result<Vec<ExponentBound>> {
    let f = hcn_structure(n)?;
    let Some(&(p, _)) = f.last() else {
        return Ok(Vec::new()); // n = 1
    };
    let big_p = next_prime(p);
    let mut out = Vec::with_capacity(f.len());
    for &(lambda, a) in &f {
        let lower = ilog(p, lambda);
        let upper = 2 * ilog(big_p, lambda);
        if (a as u64) < lower || a as u64 > upper {
            return Err(Error::OutOfRange {
                what: "ramanujan exponent bound",
                details: format!("{n}: a_{lambda} = {a} outside [{lower}, {upper}]"),
            });
        }
        out.push(ExponentBound {
            lambda,
            lower,
            exponent: a,
            upper,
        });
    }
    Ok(out)
}

/// Maximum of `d(m)` over `1 <= m < bound`, by exhaustive search over
/// factorizations in hcn shape (which contain the maximizer).
pub fn max_divisor_count_below(bound: u128) -> u64 {
    let primes = primes_up_to(200);
    fn dfs(primes: &[u64], i: usize, prev_exp: u32, val: u128, d: u64, bound: u128, best: &mut u64) {
        if d > *best {
            *best = d;
        }
        if i == primes.len() {
            return;
        }
        let p = primes[i] as u128;
        let mut v = val;
        for e in 1..=prev_exp {
            v = match v.checked_mul(p) {
                Some(next) if next < bound => next,
                _ => return,
            };
            dfs(primes, i + 1, e, v, d * (e as u64 + 1), bound, best);
        }
    }
    let mut best = 0;
    if bound > 1 {
        dfs(&primes, 0, 64, 1, 1, bound, &mut best);
    }
    best
}

/// Certify or refute hcn-hood of `n` without a scan: the structure shape
/// is necessary, and `n` is an hcn exactly when no `m < n` reaches
/// `d(m) >= d(n)`.
pub fn is_hcn_confirmed(n: u64) -> bool {
    let Ok(f) = hcn_structure(n) else {
        return false;
    };
    let d: u64 = f.iter().map(|&(_, e)| e as u64 + 1).product();
    max_divisor_count_below(n as u128) < d
}

/// Value cap for the ascending structured search; beyond it the smallest
/// qualifying hcn cannot be certified at desk scale. Large enough for the
/// smallest hcn divisible by 11! (about 2.7e13).
pub const STRUCTURED_SEARCH_CAP: u128 = 100_000_000_000_000;
const MAX_SEARCH_CANDIDATES: usize = 200_000;

fn vector_value(primes: &[u64], exps: &[u32], cap: u128) -> Option<u128> {
    let mut v: u128 = 1;
    for (i, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            v = v.checked_mul(primes[i] as u128)?;
            if v > cap {
                return None;
            }
        }
    }
    Some(v)
}

/// Necessary condition from the Ramanujan upper bound; every true hcn
/// passes, so rejection is safe during the search.
fn passes_upper_bounds(primes: &[u64], exps: &[u32]) -> bool {
    let Some(&last_exp) = exps.last() else {
        return true;
    };
    debug_assert!(last_exp >= 1);
    let p = primes[exps.len() - 1];
    let big_p = next_prime(p);
    exps.iter()
        .enumerate()
        .all(|(i, &a)| a as u64 <= 2 * ilog(big_p, primes[i]))
}

/// The smallest hcn `N` with `m! | N`: from the record scan when the
/// answer lies within the list limit, otherwise by ascending enumeration
/// of structured exponent vectors dominating the prime factorization of
/// `m!`, certifying each candidate via [`max_divisor_count_below`]. The
/// enumeration is capped at [`STRUCTURED_SEARCH_CAP`]; exhaustion is
/// reported with the cap.
pub fn find_hcn_with_factorial_divisor(list: &HcnList, m: u64) -> Result<Natural> {
    if m == 0 {
        return Err(Error::ZeroArgument("factorial index"));
    }
    let mfact = factorial(m);
    if mfact <= Natural::from(list.limit()) {
        let small: u64 = (&mfact).try_into().expect("within u64 by the comparison");
        if let Some(e) = list.entries().iter().find(|e| e.n % small == 0) {
            return Ok(Natural::from(e.n));
        }
    }
    // dominance base: the Legendre exponent vector of m!
    let primes = primes_up_to(if m < 2 { 2 } else { m }.max(2) * 4 + 64);
    let base: Vec<u32> = primes
        .iter()
        .take_while(|&&p| p <= m)
        .map(|&p| legendre_valuation(m, p).expect("prime from sieve") as u32)
        .collect();
    if base.is_empty() {
        return Ok(Natural::one());
    }
    debug_assert!(base.windows(2).all(|w| w[0] >= w[1]));

    let mut heap: BinaryHeap<Reverse<(u128, Vec<u32>)>> = BinaryHeap::new();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    if let Some(v) = vector_value(&primes, &base, STRUCTURED_SEARCH_CAP) {
        seen.insert(base.clone());
        heap.push(Reverse((v, base)));
    }
    let mut popped = 0usize;
    while let Some(Reverse((value, exps))) = heap.pop() {
        popped += 1;
        if popped > MAX_SEARCH_CANDIDATES {
            break;
        }
        if passes_upper_bounds(&primes, &exps) {
            let d: u64 = exps.iter().map(|&e| e as u64 + 1).product();
            if max_divisor_count_below(value) < d {
                return Ok(Natural::from(value));
            }
        }
        // successors: raise one exponent (keeping the profile
        // non-increasing) or append the next prime
        for i in 0..=exps.len() {
            let mut next = exps.clone();
            if i < exps.len() {
                if i > 0 && next[i] >= next[i - 1] {
                    continue;
                }
                next[i] += 1;
            } else {
                if i >= primes.len() {
                    continue;
                }
                next.push(1);
            }
            if seen.contains(&next) {
                continue;
            }
            if let Some(v) = vector_value(&primes, &next, STRUCTURED_SEARCH_CAP) {
                seen.insert(next.clone());
                heap.push(Reverse((v, next)));
            }
        }
    }
    Err(Error::SearchExhausted {
        what: "smallest hcn with factorial divisor",
        limit: STRUCTURED_SEARCH_CAP.to_string(),
    })
}

/// A superior highly composite number, stored as its exponent profile:
/// `levels` holds `(exponent, largest prime receiving at least that
/// exponent)` with exponents strictly decreasing. Every superior hcn is
/// an hcn, which is what lets the H-sequence continue past any scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperiorHcn {
    levels: Vec<(u64, u64)>,
}

/// Largest prime bound a materialized superior hcn may involve.
const MATERIALIZE_PRIME_CAP: u64 = 5_000_000;

/// Largest level boundary the superior-hcn construction will locate;
/// keeps boundary primes within comfortable 64-bit primality testing.
const SUPERIOR_BOUND_CAP: u64 = 50_000_000_000_000_000;

impl SuperiorHcn {
    pub fn levels(&self) -> &[(u64, u64)] {
        &self.levels
    }

    /// Exponent of the prime `p` in the factorization.
    pub fn exponent_of(&self, p: u64) -> u64 {
        debug_assert!(crate::arith::is_prime(p));
        self.levels
            .iter()
            .find(|&&(_, bound)| p <= bound)
            .map(|&(e, _)| e)
            .unwrap_or(0)
    }

    /// Largest prime factor.
    pub fn largest_prime(&self) -> u64 {
        self.levels.last().map(|&(_, b)| b).unwrap_or(1)
    }

    /// Base-10 digit estimate (for reporting without materializing),
    /// using the Chebyshev approximation `theta(x) ~ x` per level.
    pub fn approx_digits(&self) -> f64 {
        let mut acc = 0.0;
        for (idx, &(e, bound)) in self.levels.iter().enumerate() {
            let inner = if idx == 0 { 0.0 } else { self.levels[idx - 1].1 as f64 };
            acc += e as f64 * ((bound as f64) - inner).max(0.0);
        }
        acc / std::f64::consts::LN_10
    }

    /// Materialize the exact value. Errors when the largest prime exceeds
    /// the sieve cap.
    pub fn value(&self) -> Result<Natural> {
        let bound = self.largest_prime();
        if bound > MATERIALIZE_PRIME_CAP {
            return Err(Error::SearchExhausted {
                what: "superior hcn materialization",
                limit: MATERIALIZE_PRIME_CAP.to_string(),
            });
        }
        let primes = primes_up_to(bound);
        let factors: Vec<Natural> = primes
            .iter()
            .map(|&p| Natural::from(p).pow(self.exponent_of(p) as u32))
            .collect();
        Ok(product_tree(&factors))
    }
}

fn product_tree(xs: &[Natural]) -> Natural {
    match xs.len() {
        0 => Natural::one(),
        1 => xs[0].clone(),
        n => product_tree(&xs[..n / 2]) * product_tree(&xs[n / 2..]),
    }
}

fn ratio_one_plus_inv(a: u64) -> Rational {
    Rational::new(Int::from(a + 1), Int::from(a))
}

/// `benefit(p, a) >= benefit(q, b)`? where `benefit(p, a)` is the
/// threshold parameter `ln(1 + 1/a) / ln p` at which a superior hcn
/// acquires the `a`-th power of `p`.
fn benefit_at_least(p: u64, a: u64, q: u64, b: u64) -> bool {
    // ln(1+1/a) ln q >= ln(1+1/b) ln p
    cmp_ln_products(
        &ratio_one_plus_inv(a),
        &Rational::from_integer(Int::from(q)),
        &ratio_one_plus_inv(b),
        &Rational::from_integer(Int::from(p)),
    ) != std::cmp::Ordering::Less
}

/// The smallest superior hcn whose exponents dominate the prime
/// factorization of `m!` (so `m!` divides it). Deterministic: the
/// threshold is the least prime-power step benefit among the required
/// Legendre exponents, and all steps with benefit at least the threshold
/// are taken.
pub fn minimal_dominating_superior(m: u64) -> Result<SuperiorHcn> {
    if m < 2 {
        return Err(Error::OutOfRange {
            what: "minimal_dominating_superior",
            details: format!("m must be at least 2, got {m}"),
        });
    }
    let required: Vec<(u64, u64)> = primes_up_to(m)
        .into_iter()
        .map(|p| (p, legendre_valuation(m, p).expect("prime")))
        .collect();
    // the binding step: minimal benefit among (p, L_p)
    let (mut tp, mut ta) = required[0];
    for &(p, a) in &required[1..] {
        if !benefit_at_least(p, a, tp, ta) {
            tp = p;
            ta = a;
        }
    }
    // exponent of 2 in the result
    let mut a_max = 1u64;
    while benefit_at_least(2, a_max + 1, tp, ta) {
        a_max += 1;
    }
    let mut levels = Vec::new();
    let mut prev_bound = 2u64; // bounds ascend as the level drops
    for a in (1..=a_max).rev() {
        // float hint for the largest x with benefit(x, a) >= threshold,
        // then settle the boundary with exact comparisons
        let hint = ((1.0 + 1.0 / a as f64).ln() * (tp as f64).ln()
            / (1.0 + 1.0 / ta as f64).ln())
        .exp();
        if !(hint < SUPERIOR_BOUND_CAP as f64) {
            return Err(Error::SearchExhausted {
                what: "superior hcn level boundary",
                limit: SUPERIOR_BOUND_CAP.to_string(),
            });
        }
        let mut x = (hint as u64).max(2);
        let mut steps = 0u32;
        while benefit_at_least(x + 1, a, tp, ta) {
            x += 1;
            steps += 1;
            assert!(steps < 100_000, "float hint drifted too far at level {a}");
        }
        while x > 2 && !benefit_at_least(x, a, tp, ta) {
            x -= 1;
            steps += 1;
            assert!(steps < 100_000, "float hint drifted too far at level {a}");
        }
        let bound = prev_prime(x);
        debug_assert!(bound >= prev_bound);
        prev_bound = bound;
        levels.push((a, bound));
    }
    let shc = SuperiorHcn { levels };
    for &(p, need) in &required {
        assert!(
            shc.exponent_of(p) >= need,
            "dominance failed at p={p}: {} < {need}",
            shc.exponent_of(p)
        );
    }
    Ok(shc)
}

/// An element of the H-sequence: an hcn divisible by `n!`, either exact
/// (certified smallest) or a superior hcn continuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HcnNumber {
    Exact(u64),
    Superior(SuperiorHcn),
}

impl HcnNumber {
    pub fn exponent_of(&self, p: u64) -> u64 {
        match self {
            HcnNumber::Exact(n) => factorize(*n)
                .into_iter()
                .find(|&(q, _)| q == p)
                .map(|(_, e)| e as u64)
                .unwrap_or(0),
            HcnNumber::Superior(s) => s.exponent_of(p),
        }
    }

    pub fn value(&self) -> Result<Natural> {
        match self {
            HcnNumber::Exact(n) => Ok(Natural::from(*n)),
            HcnNumber::Superior(s) => s.value(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, HcnNumber::Exact(_))
    }
}

/// The H-sequence `h_1, h_2, ...`: hcn with `n! | h_n`, non-decreasing.
/// Each `h_n` is the certified smallest qualifying hcn while the
/// structured search reaches; beyond that it is the smallest qualifying
/// superior hcn.
pub fn h_sequence(list: &HcnList, n_max: u64) -> Result<Vec<HcnNumber>> {
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        match find_hcn_with_factorial_divisor(list, n) {
            Ok(v) => {
                let small: u64 = (&v).try_into().expect("search cap fits u64");
                out.push(HcnNumber::Exact(small));
            }
            Err(Error::SearchExhausted { .. }) => {
                out.push(HcnNumber::Superior(minimal_dominating_superior(n)?));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Report on the hcn content of the prime factorial set
/// `B_n = prod p_i^{floor(n/i)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSetPrefixReport {
    /// `B_1 ..= B_6` all appear in the record scan.
    pub first_six_are_hcn: bool,
    /// `B_7 ..= B_30` all refuted (directly for 7 and 8, via the exponent
    /// bound `n <= 2 floor(log2 p_{n+1})` for 9 and up).
    pub terms_7_to_30_not_hcn: bool,
    /// First `n` violating `n <= 2 floor(log2 p_{n+1})`.
    pub bound_first_failure: Option<u64>,
}

/// Check which prefix elements of the prime factorial set are hcn.
/// Requires a scan list reaching `B_6 = 43243200`.
pub fn prime_factorial_set_prefix_check(list: &HcnList) -> Result<PrimeSetPrefixReport> {
    const B6: u64 = 43_243_200;
    if list.limit() < B6 {
        return Err(Error::OutOfRange {
            what: "prime_factorial_set_prefix_check",
            details: format!("needs an hcn list up to at least {B6}, got {}", list.limit()),
        });
    }
    let primes = primes_up_to(200);
    let b = |n: u64| -> u128 {
        let mut acc = 1u128;
        for i in 1..=n {
            for _ in 0..n / i {
                acc = acc.checked_mul(primes[i as usize - 1] as u128).expect("B_n fits u128");
            }
        }
        acc
    };
    let first_six_are_hcn = (1..=6).all(|n| list.contains(b(n) as u64));
    let mut all_refuted = true;
    for n in 7..=8u64 {
        if is_hcn_confirmed(b(n) as u64) {
            all_refuted = false;
        }
    }
    let bound_holds = |n: u64| n <= 2 * ilog(primes[n as usize], 2);
    for n in 9..=30u64 {
        if bound_holds(n) {
            // the exponent of 2 in B_n is n; a holding bound would leave
            // hcn-hood unresolved at this scale
            all_refuted = false;
        }
    }
    let bound_first_failure = (1..=30u64).find(|&n| !bound_holds(n));
    Ok(PrimeSetPrefixReport {
        first_six_are_hcn,
        terms_7_to_30_not_hcn: all_refuted,
        bound_first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn record_scan_small() {
        let list = hcn_up_to(1000).unwrap();
        let expect = [1u64, 2, 4, 6, 12, 24, 36, 48, 60, 120, 180, 240, 360, 720, 840];
        assert_eq!(list.values().collect::<Vec<_>>(), expect);
        assert_eq!(list.entries()[7].d, 10); // d(48)
        assert!(hcn_up_to(0).is_err());
        assert_eq!(hcn_up_to(1).unwrap().values().collect::<Vec<_>>(), [1]);
    }

    #[test]
    fn consecutive_pairs_from_the_scan() {
        let list = hcn_up_to(50_000).unwrap();
        let values: Vec<u64> = list.values().collect();
        let i = values.iter().position(|&n| n == 27_720).unwrap();
        assert_eq!(values[i + 1], 45_360);
    }

    #[test]
    fn structure_and_bounds() {
        assert!(hcn_structure(48).is_ok());
        assert!(hcn_structure(36).is_ok()); // classical exception
        assert!(hcn_structure(4).is_ok());
        assert!(hcn_structure(15).is_err()); // skips 2
        assert!(hcn_structure(18).is_err()); // 2*3^2 increasing exponents
        assert!(hcn_structure(8).is_err()); // ends in exponent 3

        let checks = ramanujan_exponent_bounds(2).unwrap();
        assert_eq!(checks, vec![ExponentBound { lambda: 2, lower: 1, exponent: 1, upper: 2 }]);
        let checks = ramanujan_exponent_bounds(48).unwrap();
        assert_eq!(checks[0], ExponentBound { lambda: 2, lower: 1, exponent: 4, upper: 4 });
        assert!(ramanujan_exponent_bounds(45360).is_ok());
    }

    #[test]
    fn divisor_maximum_search() {
        assert_eq!(max_divisor_count_below(49), 10); // d(48)
        assert_eq!(max_divisor_count_below(48), 9); // d(36)
        assert!(is_hcn_confirmed(48));
        assert!(!is_hcn_confirmed(50));
        // B_7 of the prime factorial set is beaten by 1396755360
        assert!(!is_hcn_confirmed(1_470_268_800));
        assert!(is_hcn_confirmed(1_396_755_360));
    }

    #[test]
    fn find_factorial_divisors_in_scan_range() {
        let list = hcn_up_to(100_000).unwrap();
        let expect = [1u64, 2, 6, 24, 120, 720, 5040];
        for (m, &h) in expect.iter().enumerate() {
            assert_eq!(
                find_hcn_with_factorial_divisor(&list, m as u64 + 1).unwrap(),
                Natural::from(h),
                "m = {}",
                m + 1
            );
        }
    }

    #[test]
    fn find_agrees_between_scan_and_structured_search() {
        // tiny list forces the structured search; results must match the
        // scan answers
        let tiny = hcn_up_to(100).unwrap();
        for m in 4..=7u64 {
            let big = hcn_up_to(20_000_000).unwrap();
            let a = find_hcn_with_factorial_divisor(&tiny, m).unwrap();
            let b = find_hcn_with_factorial_divisor(&big, m).unwrap();
            assert_eq!(a, b, "m={m}");
        }
    }

    #[test]
    fn find_eight_and_beyond() {
        let list = hcn_up_to(100).unwrap();
        assert_eq!(
            find_hcn_with_factorial_divisor(&list, 8).unwrap(),
            Natural::from(17_297_280u64)
        );
        // 9 and 10 are beyond any scan here; certified by the search
        let h9 = find_hcn_with_factorial_divisor(&list, 9).unwrap();
        let h10 = find_hcn_with_factorial_divisor(&list, 10).unwrap();
        assert_eq!(h9, Natural::from(1_927_522_396_800u64));
        assert_eq!(h10, Natural::from(26_985_313_555_200u64));
        assert!((&h9 % Natural::from(factorial(9))).is_zero());
        assert!((&h10 % Natural::from(factorial(10))).is_zero());
        // 12 is genuinely out of certified reach (the smallest qualifying
        // hcn exceeds 1e18)
        assert!(matches!(
            find_hcn_with_factorial_divisor(&list, 12),
            Err(Error::SearchExhausted { .. })
        ));
    }

    #[test]
    fn superior_nine_matches_hand_computation() {
        let s = minimal_dominating_superior(9).unwrap();
        assert_eq!(s.exponent_of(2), 7);
        assert_eq!(s.exponent_of(3), 4);
        assert_eq!(s.exponent_of(5), 2);
        assert_eq!(s.exponent_of(7), 2);
        assert_eq!(s.exponent_of(11), 1);
        assert_eq!(s.exponent_of(31), 1);
        assert_eq!(s.exponent_of(37), 0);
        assert_eq!(s.largest_prime(), 31);
        assert_eq!(
            s.value().unwrap(),
            Natural::from(12_129_898_443_062_400u64)
        );
    }

    #[test]
    fn h_sequence_monotone_and_divisible() {
        let list = hcn_up_to(1_000_000).unwrap();
        let h = h_sequence(&list, 14).unwrap();
        for (i, e) in h.iter().enumerate() {
            let n = i as u64 + 1;
            // n! | h_n, checked on exponents
            for p in primes_up_to(n.max(2)) {
                if p > n {
                    break;
                }
                assert!(
                    e.exponent_of(p) >= legendre_valuation(n, p).unwrap(),
                    "n={n} p={p}"
                );
            }
        }
        for w in h.windows(2) {
            match (&w[0], &w[1]) {
                (HcnNumber::Exact(a), HcnNumber::Exact(b)) => assert!(a <= b),
                (HcnNumber::Exact(_), HcnNumber::Superior(_)) => {}
                (HcnNumber::Superior(a), HcnNumber::Superior(b)) => {
                    assert!(a.exponent_of(2) <= b.exponent_of(2));
                }
                (HcnNumber::Superior(_), HcnNumber::Exact(_)) => {
                    panic!("superior region must not fall back to exact")
                }
            }
        }
    }

    #[test]
    fn prefix_check_requires_deep_list() {
        let list = hcn_up_to(1000).unwrap();
        assert!(prime_factorial_set_prefix_check(&list).is_err());
    }
}
