//! Exact comparison of products of logarithms of rationals, via rational
//! interval enclosures of `ln` at escalating precision. Used to order the
//! prime-power steps of superior highly composite numbers, where the
//! comparisons `ln(1 + 1/a) * ln q  vs  ln(1 + 1/b) * ln p` decide which
//! exponents a threshold includes.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::{Int, Rational};

fn two() -> Rational {
    Rational::from_integer(Int::from(2))
}

/// Floor of log2 of a rational `x >= 1`.
fn floor_log2(x: &Rational) -> u32 {
    debug_assert!(x >= &Rational::one());
    let mut k = 0u32;
    let mut pow = two();
    while &pow <= x {
        k += 1;
        pow *= two();
    }
    k
}

/// Enclosure of `ln m` for `m` in `[1, 2)` by the atanh series
/// `ln m = 2 sum z^{2j+1} / (2j+1)`, `z = (m-1)/(m+1) in [0, 1/3)`.
/// The tail after `j = J` is below `2 z^{2J+3} / ((2J+3)(1 - z^2))`.
fn ln_mantissa(m: &Rational, terms: usize) -> (Rational, Rational) {
    debug_assert!(m >= &Rational::one() && m < &two());
    if m.is_one() {
        return (Rational::zero(), Rational::zero());
    }
    let z = (m - Rational::one()) / (m + Rational::one());
    let z2 = &z * &z;
    let mut sum = Rational::zero();
    let mut zpow = z.clone();
    for j in 0..terms {
        sum += &zpow / Rational::from_integer(Int::from(2 * j as u64 + 1));
        zpow *= &z2;
    }
    let lower = &sum * two();
    let tail = &zpow * two()
        / (Rational::from_integer(Int::from(2 * terms as u64 + 1)) * (Rational::one() - &z2));
    let upper = &lower + tail;
    (lower, upper)
}

/// Enclosure of `ln x` for rational `x >= 1`: reduce to
/// `x = 2^k m`, `m in [1, 2)`, with `ln 2` from the same series.
/// Results are cached per thread; the same arguments recur heavily in
/// threshold searches.
fn ln_enclosure(x: &Rational, terms: usize) -> (Rational, Rational) {
    use std::cell::RefCell;
    use std::collections::HashMap;
    thread_local! {
        static CACHE: RefCell<HashMap<(Rational, usize), (Rational, Rational)>> =
            RefCell::new(HashMap::new());
    }
    let key = (x.clone(), terms);
    if let Some(hit) = CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let out = ln_enclosure_uncached(x, terms);
    CACHE.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

fn ln_enclosure_uncached(x: &Rational, terms: usize) -> (Rational, Rational) {
    debug_assert!(x >= &Rational::one(), "ln enclosure needs x >= 1");
    let k = floor_log2(x);
    let mut m = x.clone();
    for _ in 0..k {
        m /= two();
    }
    // floor_log2 guarantees m in [1, 2)
    let (mlo, mhi) = ln_mantissa(&m, terms);
    let (l2lo, l2hi) = ln_mantissa(&(Rational::new(Int::from(3), Int::from(2))), terms);
    // ln 2 = ln(3/2) + ln(4/3)
    let (l43lo, l43hi) = ln_mantissa(&Rational::new(Int::from(4), Int::from(3)), terms);
    let ln2lo = l2lo + l43lo;
    let ln2hi = l2hi + l43hi;
    let k = Rational::from_integer(Int::from(k));
    (&k * ln2lo + mlo, &k * ln2hi + mhi)
}

/// Compare `ln(x1) * ln(y1)` with `ln(x2) * ln(y2)` exactly, for rationals
/// `>= 1`. Precision escalates until the enclosures separate; equal
/// products of distinct pairs do not occur at the scales this crate
/// reaches, and hitting the cap is treated as a logic error.
pub(crate) fn cmp_ln_products(
    x1: &Rational,
    y1: &Rational,
    x2: &Rational,
    y2: &Rational,
) -> Ordering {
    if x1 == x2 && y1 == y2 {
        return Ordering::Equal;
    }
    if (x1.is_one() || y1.is_one()) && (x2.is_one() || y2.is_one()) {
        return Ordering::Equal; // both products are zero
    }
    for terms in [12usize, 24, 48, 96, 192] {
        let (ax, bx) = ln_enclosure(x1, terms);
        let (ay, by) = ln_enclosure(y1, terms);
        let (cx, dx) = ln_enclosure(x2, terms);
        let (cy, dy) = ln_enclosure(y2, terms);
        // all values nonnegative, so interval products are monotone
        let lo1 = &ax * &ay;
        let hi1 = &bx * &by;
        let lo2 = &cx * &cy;
        let hi2 = &dx * &dy;
        if hi1 < lo2 {
            return Ordering::Less;
        }
        if hi2 < lo1 {
            return Ordering::Greater;
        }
    }
    panic!(
        "could not separate ln({x1})*ln({y1}) from ln({x2})*ln({y2}); \
         either a true coincidence or a precision bug"
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(Int::from(n), Int::from(d))
    }

    #[test]
    fn ln_enclosure_brackets_known_values() {
        // at few terms the enclosure is wide enough to contain a 16-digit
        // truncation of the true value
        let ln2 = r(6931471805599453, 10_000_000_000_000_000);
        let (lo, hi) = ln_enclosure(&r(2, 1), 4);
        assert!(lo <= ln2 && ln2 <= hi);
        let ln1000 = r(6907755278982137, 1_000_000_000_000_000);
        let (lo, hi) = ln_enclosure(&r(1000, 1), 4);
        assert!(lo <= ln1000 && ln1000 <= hi);
        // precision improves with the term count
        let (lo, hi) = ln_enclosure(&r(2, 1), 24);
        assert!(&hi - &lo < r(1, 1_000_000_000_000_000_000));
        assert!(hi - lo > Rational::zero());
    }

    #[test]
    fn product_comparisons() {
        // ln(2)*ln(8) = 3 ln(2)^2 > ln(4)*ln(4) = 4 ln(2)^2? no: 3 < 4
        assert_eq!(
            cmp_ln_products(&r(2, 1), &r(8, 1), &r(4, 1), &r(4, 1)),
            Ordering::Less
        );
        assert_eq!(
            cmp_ln_products(&r(3, 1), &r(3, 1), &r(2, 1), &r(2, 1)),
            Ordering::Greater
        );
        assert_eq!(
            cmp_ln_products(&r(5, 2), &r(7, 3), &r(5, 2), &r(7, 3)),
            Ordering::Equal
        );
        // benefit ordering: ln(3/2)*ln(3) vs ln(4/3)*ln(2):
        // 0.4055*1.0986 = 0.4455 vs 0.2877*0.6931 = 0.1994
        assert_eq!(
            cmp_ln_products(&r(3, 2), &r(3, 1), &r(4, 3), &r(2, 1)),
            Ordering::Greater
        );
    }
}
