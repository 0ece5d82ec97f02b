//! Reciprocal-factorial series with proven enclosures.
//!
//! Every partial sum is an exact rational; the tail of
//! `sum 1/m!_a` after `k` terms is bounded by
//! `sum_{m>k} 1/m! < 2/(k+1)!`, valid because `m!` divides `m!_a`. That
//! bound works even for exceptional factorials, where infinitely many
//! consecutive terms are equal and any ratio-based bound fails.
//! Floating point appears only in the decimal rendering.

use num_traits::{One, Signed, Zero};

use crate::arith::{exact_div, factorial, nth_prime};
use crate::error::{Error, Result};
use crate::factorial::FactorialSequence;
use crate::factorial_set::FactorialSet;
use crate::{Int, Natural, Rational};

/// A series value with a proven enclosing interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesEstimate {
    /// Exact lower bound (a partial sum).
    pub lower: Rational,
    /// Exact upper bound (partial sum plus tail bound).
    pub upper: Rational,
    /// Midpoint rendered to the digits implied by the tolerance,
    /// round-half-even.
    pub decimal: String,
    /// Number of series terms accumulated.
    pub terms_used: usize,
}

impl SeriesEstimate {
    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    /// True when the closed interval contains `x`.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    /// True when `other` lies entirely inside `self`.
    pub fn encloses(&self, other: &SeriesEstimate) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }

}

/// Deepen `eval` until the enclosure is narrower than `tol` and both
/// endpoints round to the same string at the implied digit count, so the
/// rendering is the correctly rounded true value. Rounding agreement is
/// abandoned after 64 extra refinement steps (it only fails when the true
/// value sits within the enclosure of a rounding boundary).
fn refine_until_rounded(
    eval: &mut dyn FnMut(u64) -> Result<(Rational, Rational)>,
    tol: &Rational,
) -> Result<(Rational, Rational, u64, String)> {
    let digits = digits_for_tolerance(tol);
    let mut k = 1u64;
    let mut narrow_since = None;
    loop {
        let (lower, upper) = eval(k)?;
        if &(&upper - &lower) <= tol {
            narrow_since.get_or_insert(k);
            let slo = decimal_string(&lower, digits);
            let shi = decimal_string(&upper, digits);
            if slo == shi || k >= narrow_since.unwrap() + 64 {
                return Ok((lower, upper, k, slo));
            }
        }
        k += 1;
    }
}

fn rat(n: Natural) -> Rational {
    Rational::from_integer(Int::from(n))
}

fn check_tol(tol: &Rational) -> Result<()> {
    if tol <= &Rational::zero() {
        return Err(Error::OutOfRange {
            what: "tolerance",
            details: "must be positive".into(),
        });
    }
    Ok(())
}

/// `2 / (k+1)!`, the universal tail bound after summing terms `0..=k` of
/// any series whose `m`-th term is at most `1/m!`.
fn factorial_tail_bound(k: u64) -> Rational {
    Rational::new(Int::from(2), Int::from(factorial(k + 1)))
}

fn check_term_divisibility(seq: &FactorialSequence, n: u64, value: &Natural) -> Result<()> {
    if n >= 1 && exact_div(value, &factorial(n)).is_none() {
        return Err(Error::TailBoundInvalid {
            sequence: seq.name().to_string(),
            n: n as u32,
        });
    }
    Ok(())
}

/// Partial evaluation of `e_a = sum_{r>=0} 1/r!_a` after terms `0..=k`,
/// as the enclosure `[S_k, S_k + 2/(k+1)!]`. Verifies `r! | r!_a` at every
/// index it touches, since the tail bound depends on it.
pub fn e_a_partial(seq: &FactorialSequence, k: u64) -> Result<(Rational, Rational)> {
    let mut sum = Rational::zero();
    for r in 0..=k {
        let v = seq.value_at(r);
        if r == 0 && !v.is_one() {
            return Err(Error::TailBoundInvalid {
                sequence: seq.name().to_string(),
                n: 0,
            });
        }
        check_term_divisibility(seq, r, &v)?;
        sum += rat(v).recip();
    }
    let upper = &sum + factorial_tail_bound(k);
    Ok((sum, upper))
}

/// `e_a = sum 1/r!_a` enclosed to width `tol`, with the decimal rendering
/// correctly rounded.
pub fn evaluate_e_a(seq: &FactorialSequence, tol: &Rational) -> Result<SeriesEstimate> {
    check_tol(tol)?;
    let (lower, upper, k, decimal) =
        refine_until_rounded(&mut |k| e_a_partial(seq, k), tol)?;
    Ok(SeriesEstimate {
        lower,
        upper,
        decimal,
        terms_used: k as usize + 1,
    })
}

/// Partial alternating sum `sum_{m=0}^{k} (-1)^m / m!_a` bracketed by its
/// last two partial sums (the terms are non-increasing because the
/// factorials are non-decreasing, which is verified along the way).
pub fn alternating_partial(seq: &FactorialSequence, k: u64) -> Result<(Rational, Rational)> {
    assert!(k >= 1, "need at least two partial sums to bracket");
    let mut sum = Rational::zero();
    let mut prev_value = Natural::one();
    let mut prev_sum = Rational::zero();
    for m in 0..=k {
        let v = seq.value_at(m);
        if m == 0 && !v.is_one() {
            return Err(Error::TailBoundInvalid {
                sequence: seq.name().to_string(),
                n: 0,
            });
        }
        check_term_divisibility(seq, m, &v)?;
        if v < prev_value {
            return Err(Error::OutOfRange {
                what: "alternating series",
                details: format!("{}!_a decreased at {m}; bracket invalid", seq.name()),
            });
        }
        prev_sum = sum.clone();
        let term = rat(v.clone()).recip();
        if m % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        prev_value = v;
    }
    if sum <= prev_sum {
        Ok((sum, prev_sum))
    } else {
        Ok((prev_sum, sum))
    }
}

/// `sum (-1)^n / n!_a` enclosed to width `tol` via the alternating-series
/// bracket.
pub fn evaluate_alternating(seq: &FactorialSequence, tol: &Rational) -> Result<SeriesEstimate> {
    check_tol(tol)?;
    let (lower, upper, k, decimal) =
        refine_until_rounded(&mut |k| alternating_partial(seq, k), tol)?;
    Ok(SeriesEstimate {
        lower,
        upper,
        decimal,
        terms_used: k as usize + 1,
    })
}

/// Partial sum of `sum_{n>=1} 1/B_n^k` over a self-factorial set (with an
/// optional leading `1` for the `n = 0` term), after `terms` terms of the
/// `n >= 1` series. Rejects sets where `n! | B_n` fails at a used index,
/// since the tail bound is unproven there.
pub fn set_power_partial(
    set: &FactorialSet,
    k: u32,
    include_leading_one: bool,
    terms: u64,
) -> Result<(Rational, Rational)> {
    if k == 0 {
        return Err(Error::ZeroArgument("power"));
    }
    let mut sum = if include_leading_one {
        Rational::one()
    } else {
        Rational::zero()
    };
    for n in 1..=terms {
        let b = set.element_at(n)?;
        if exact_div(&b, &factorial(n)).is_none() {
            return Err(Error::NotSelfFactorial { n: n as u32 });
        }
        sum += rat(b.pow(k)).recip();
    }
    let upper = &sum + factorial_tail_bound(terms);
    Ok((sum, upper))
}

/// `sum_{n>=1} 1/B_n^k` (optionally `1 + ...`) enclosed to width `tol`.
pub fn evaluate_set_power_series(
    set: &FactorialSet,
    k: u32,
    include_leading_one: bool,
    tol: &Rational,
) -> Result<SeriesEstimate> {
    check_tol(tol)?;
    let (lower, upper, terms, decimal) = refine_until_rounded(
        &mut |terms| set_power_partial(set, k, include_leading_one, terms),
        tol,
    )?;
    Ok(SeriesEstimate {
        lower,
        upper,
        decimal,
        terms_used: terms as usize,
    })
}

/// Partial sum of `sum_{n>=1} 1/p_n!` with tail bound `2/p_{K+1}!`.
pub fn prime_factorial_partial(terms: u64) -> (Rational, Rational) {
    let mut sum = Rational::zero();
    for n in 1..=terms {
        sum += rat(factorial(nth_prime(n).expect("n >= 1"))).recip();
    }
    let next = nth_prime(terms + 1).expect("positive index");
    let upper = &sum + Rational::new(Int::from(2), Int::from(factorial(next)));
    (sum, upper)
}

/// `sum 1/p_n!` enclosed to width `tol`.
pub fn evaluate_prime_factorial_series(tol: &Rational) -> Result<SeriesEstimate> {
    check_tol(tol)?;
    let (lower, upper, terms, decimal) =
        refine_until_rounded(&mut |terms| Ok(prime_factorial_partial(terms)), tol)?;
    Ok(SeriesEstimate {
        lower,
        upper,
        decimal,
        terms_used: terms as usize,
    })
}

/// Partial sum of `sum_{n>=0} 2^{floor(n/2)} / n!^2` over terms `0..=k`.
/// Each term is at most `1/n!`, so the factorial tail bound applies.
pub fn bessel_partial(k: u64) -> (Rational, Rational) {
    let mut sum = Rational::zero();
    for n in 0..=k {
        let num = Natural::from(2u32).pow((n / 2) as u32);
        let den = factorial(n).pow(2);
        sum += Rational::new(Int::from(num), Int::from(den));
    }
    let upper = &sum + factorial_tail_bound(k);
    (sum, upper)
}

/// The Bessel-function example constant `sum 2^{floor(n/2)} / n!^2`
/// enclosed to width `tol`.
pub fn evaluate_bessel_example(tol: &Rational) -> Result<SeriesEstimate> {
    check_tol(tol)?;
    let (lower, upper, k, decimal) =
        refine_until_rounded(&mut |k| Ok(bessel_partial(k)), tol)?;
    Ok(SeriesEstimate {
        lower,
        upper,
        decimal,
        terms_used: k as usize + 1,
    })
}

/// Smallest number of decimal digits resolving the tolerance:
/// `10^-d <= tol`, capped at 50.
pub fn digits_for_tolerance(tol: &Rational) -> usize {
    let mut d = 0usize;
    let mut scale = Rational::one();
    let ten = Rational::from_integer(Int::from(10));
    while &scale > tol && d < 50 {
        scale /= &ten;
        d += 1;
    }
    d
}

/// Render an exact rational to `digits` decimal places, rounding
/// half-to-even on the magnitude.
pub fn decimal_string(x: &Rational, digits: usize) -> String {
    let negative = x.is_negative();
    let mag = x.abs();
    let scale = Int::from(10u32).pow(digits as u32);
    let scaled = mag * Rational::from_integer(scale.clone());
    let num = scaled.numer().clone();
    let den = scaled.denom().clone();
    let (mut q, r) = num_integer::Integer::div_rem(&num, &den);
    let twice = &r * Int::from(2);
    let round_up = match twice.cmp(&den) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => num_integer::Integer::is_odd(&q),
        std::cmp::Ordering::Less => false,
    };
    if round_up {
        q += 1;
    }
    let (int_part, frac_part) = num_integer::Integer::div_rem(&q, &scale);
    let sign = if negative && !q.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = digits
        )
    }
}

/// Parse a tolerance or target value: plain decimals (`0.001`),
/// scientific notation (`1e-8`, `2.5E-10`), or exact fractions (`1/1000`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = |details: String| Error::Parse { line: 0, details };
    if let Some((a, b)) = s.split_once('/') {
        let num: Int = a.trim().parse().map_err(|e| err(format!("{e}")))?;
        let den: Int = b.trim().parse().map_err(|e| err(format!("{e}")))?;
        if den.is_zero() {
            return Err(err("zero denominator".into()));
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i32 = e.parse().map_err(|e| err(format!("bad exponent: {e}")))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_str, frac_str) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let negative = int_str.starts_with('-');
    let int_digits = int_str.trim_start_matches(['-', '+']);
    let joined = format!("{int_digits}{frac_str}");
    if joined.is_empty() || !joined.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(format!("not a number: {s}")));
    }
    let mut value = Rational::from_integer(joined.parse::<Int>().map_err(|e| err(format!("{e}")))?);
    let shift = exp - frac_str.len() as i32;
    let ten = Rational::from_integer(Int::from(10));
    for _ in 0..shift.abs() {
        if shift > 0 {
            value *= &ten;
        } else {
            value /= &ten;
        }
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorial_set::{build_closed_form, PrimitiveSequence};

    fn tol(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    /// Containment up to the truncation error of a decimal literal.
    fn near(est: &SeriesEstimate, literal: &str) -> bool {
        let x = tol(literal);
        let slack = tol("1e-15");
        est.lower <= &x + &slack && x - slack <= est.upper
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(tol("1/4"), Rational::new(Int::from(1), Int::from(4)));
        assert_eq!(tol("0.25"), Rational::new(Int::from(1), Int::from(4)));
        assert_eq!(tol("25e-2"), Rational::new(Int::from(1), Int::from(4)));
        assert_eq!(tol("2.5E-1"), Rational::new(Int::from(1), Int::from(4)));
        assert_eq!(tol("-0.5"), Rational::new(Int::from(-1), Int::from(2)));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn decimal_rendering_half_even() {
        assert_eq!(decimal_string(&tol("1/8"), 2), "0.12");
        assert_eq!(decimal_string(&tol("3/8"), 2), "0.38");
        assert_eq!(decimal_string(&tol("1/3"), 4), "0.3333");
        assert_eq!(decimal_string(&tol("2/3"), 4), "0.6667");
        assert_eq!(decimal_string(&tol("-1/8"), 2), "-0.12");
        assert_eq!(decimal_string(&tol("5"), 0), "5");
        assert_eq!(decimal_string(&tol("2.05"), 1), "2.0");
        assert_eq!(decimal_string(&tol("2.15"), 1), "2.2");
    }

    #[test]
    fn ordinary_gives_e() {
        let est = evaluate_e_a(&FactorialSequence::ordinary(), &tol("1e-9")).unwrap();
        assert!(est.width() <= tol("1e-9"));
        assert!(near(&est, "2.718281828459045235360287"));
        assert_eq!(&est.decimal[..11], "2.718281828");
    }

    #[test]
    fn alternating_ordinary_gives_inverse_e() {
        let est = evaluate_alternating(&FactorialSequence::ordinary(), &tol("1e-10")).unwrap();
        assert!(near(&est, "0.367879441171442321595524"));
    }

    #[test]
    fn scaled_multiple_two_matches_closed_forms() {
        let seq = FactorialSequence::scaled_multiple(2).unwrap();
        let est = evaluate_e_a(&seq, &tol("1e-11")).unwrap();
        assert!(near(&est, "2.178183556608570863989222"));
        let est = evaluate_alternating(&seq, &tol("1e-11")).unwrap();
        assert!(near(&est, "0.155943694765374473454648"));
    }

    #[test]
    fn bhargava_primes_constant() {
        let est = evaluate_e_a(&FactorialSequence::bhargava_primes(), &tol("1e-10")).unwrap();
        assert!(near(&est, "2.562760934446937455"));
        let eight = evaluate_e_a(&FactorialSequence::bhargava_primes(), &tol("1e-8")).unwrap();
        assert_eq!(eight.decimal, "2.56276093");
    }

    #[test]
    fn axiom3_failure_detected() {
        let seq = FactorialSequence::from_fn("pure-power:3", |n| Natural::from(3u32).pow(n as u32));
        assert!(matches!(
            evaluate_e_a(&seq, &tol("1e-4")),
            Err(Error::TailBoundInvalid { .. })
        ));
    }

    #[test]
    fn set_power_series_values() {
        let zplus = build_closed_form(PrimitiveSequence::positive_integers(), 20).unwrap();
        let est = evaluate_set_power_series(&zplus, 1, true, &tol("1e-9")).unwrap();
        assert!(near(&est, "2.6917992098217123513"));
        let primes = build_closed_form(PrimitiveSequence::primes(), 20).unwrap();
        let est = evaluate_set_power_series(&primes, 1, false, &tol("1e-8")).unwrap();
        assert!(near(&est, "0.5918741219301250112"));
        // k -> infinity: the first term dominates; B_1 = 2 for primes
        let est = evaluate_set_power_series(&primes, 30, false, &tol("1e-12")).unwrap();
        let first = Rational::new(Int::from(1), Int::from(2)).pow(30);
        assert!(est.lower >= first);
        assert!(est.upper <= &first + tol("1e-8"));
        let q2 = build_closed_form(PrimitiveSequence::constant(2).unwrap(), 20).unwrap();
        assert!(matches!(
            evaluate_set_power_series(&q2, 1, false, &tol("1e-6")),
            Err(Error::NotSelfFactorial { n: 3 })
        ));
        assert!(evaluate_set_power_series(&zplus, 0, false, &tol("1e-6")).is_err());
    }

    #[test]
    fn prime_factorial_series_values() {
        let (lo, _) = prime_factorial_partial(1);
        assert_eq!(lo, Rational::new(Int::from(1), Int::from(2)));
        let (lo, _) = prime_factorial_partial(2);
        assert_eq!(lo, Rational::new(Int::from(2), Int::from(3)));
        let est = evaluate_prime_factorial_series(&tol("1e-12")).unwrap();
        assert!(near(&est, "0.6751984379111143419005616"));
    }

    #[test]
    fn bessel_example_values() {
        let (lo, _) = bessel_partial(0);
        assert!(lo.is_one());
        let (lo, _) = bessel_partial(2);
        assert_eq!(lo, Rational::new(Int::from(5), Int::from(2)));
        let est = evaluate_bessel_example(&tol("1e-10")).unwrap();
        assert!(near(&est, "2.5627935347831894616"));
        assert_eq!(
            evaluate_bessel_example(&tol("1e-8")).unwrap().decimal,
            "2.56279353"
        );
    }

    #[test]
    fn doubling_depth_stays_inside_enclosure() {
        let seq = FactorialSequence::bhargava_primes();
        let (lo1, hi1) = e_a_partial(&seq, 12).unwrap();
        let (lo2, hi2) = e_a_partial(&seq, 24).unwrap();
        assert!(lo1 <= lo2 && hi2 <= hi1);
    }

    #[test]
    fn e_a_bounds_between_one_and_e() {
        let e_upper = {
            let (_, hi) = e_a_partial(&FactorialSequence::ordinary(), 25).unwrap();
            hi
        };
        for seq in [
            FactorialSequence::ordinary(),
            FactorialSequence::geometric(2).unwrap(),
            FactorialSequence::scaled_multiple(3).unwrap(),
            FactorialSequence::power_factorial(2).unwrap(),
            FactorialSequence::bhargava_primes(),
            FactorialSequence::exceptional(2).unwrap(),
        ] {
            let est = evaluate_e_a(&seq, &tol("1e-6")).unwrap();
            assert!(est.lower > Rational::one(), "{}", seq.name());
            assert!(est.lower <= e_upper, "{}", seq.name());
        }
    }
}
