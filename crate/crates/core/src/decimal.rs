//! Decimal rendering of exact rationals and enclosures.
//!
//! Everything truncates toward zero, so a digit string printed from an
//! enclosure is correct for every member of it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::numerics::RatInterval;

/// `x` truncated toward zero to `digits` fractional digits.
///
/// ```
/// use harmonic_cert::decimal::truncate;
/// use harmonic_cert::numerics::rat;
///
/// assert_eq!(truncate(&rat(2, 3), 4), "0.6666");
/// assert_eq!(truncate(&rat(-1, 8), 2), "-0.12");
/// assert_eq!(truncate(&rat(7, 1), 0), "7");
/// ```
pub fn truncate(x: &BigRational, digits: usize) -> String {
    let scaled = scaled_trunc(x, digits);
    render(&scaled, x.is_negative(), digits)
}

fn scaled_trunc(x: &BigRational, digits: usize) -> BigInt {
    let p = BigInt::from(10u8).pow(digits as u32);
    (x * BigRational::from_integer(p)).trunc().to_integer()
}

fn render(scaled: &BigInt, negative: bool, digits: usize) -> String {
    let mut body = scaled.abs().to_string();
    if body.len() <= digits {
        body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
    }
    let split = body.len() - digits;
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{body}")
    } else {
        format!("{sign}{}.{}", &body[..split], &body[split..])
    }
}

/// Largest digit count `d ≤ max_digits` for which both endpoints truncate
/// to the same string, together with that string.
///
/// Returns `None` when the endpoints disagree even on the integer part.
///
/// ```
/// use harmonic_cert::decimal::agreed_prefix;
/// use harmonic_cert::numerics::{rat, RatInterval};
///
/// let iv = RatInterval::new(rat(57721, 100000), rat(57729, 100000)).unwrap();
/// assert_eq!(agreed_prefix(&iv, 10), Some((4, "0.5772".to_string())));
/// ```
pub fn agreed_prefix(iv: &RatInterval, max_digits: usize) -> Option<(usize, String)> {
    let agrees = |d: usize| {
        let lo = scaled_trunc(iv.lo(), d);
        let hi = scaled_trunc(iv.hi(), d);
        // "-0.0…" and "0.0…" both truncate to zero but print differently
        lo == hi && (!lo.is_zero() || iv.lo().is_negative() == iv.hi().is_negative())
    };
    if !agrees(0) {
        return None;
    }
    // truncation is monotone, so agreement at d implies agreement below d
    let (mut good, mut bad) = (0usize, max_digits + 1);
    if agrees(max_digits) {
        good = max_digits;
    } else {
        while bad - good > 1 {
            let mid = (good + bad) / 2;
            if agrees(mid) {
                good = mid;
            } else {
                bad = mid;
            }
        }
    }
    Some((good, truncate(iv.lo(), good)))
}

/// Scientific notation with `sig` significant digits, truncated toward zero.
///
/// ```
/// use harmonic_cert::decimal::scientific;
/// use harmonic_cert::numerics::rat;
///
/// assert_eq!(scientific(&rat(1, 4_000_000), 4), "2.500e-7");
/// assert_eq!(scientific(&rat(-31, 10), 2), "-3.1e0");
/// ```
pub fn scientific(x: &BigRational, sig: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let a = x.abs();
    let ten = BigRational::from_integer(BigInt::from(10u8));
    // estimate the exponent from bit lengths, then correct
    let est = ((a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2).floor() as i32;
    let mut e = est;
    let pow = |e: i32| {
        if e >= 0 {
            ten.pow(e)
        } else {
            ten.pow(-e).recip()
        }
    };
    while pow(e) > a {
        e -= 1;
    }
    while pow(e + 1) <= a {
        e += 1;
    }
    let mantissa = &a / pow(e);
    let m = truncate(&mantissa, sig.saturating_sub(1));
    let sign = if x.is_negative() { "-" } else { "" };
    format!("{sign}{m}e{e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn truncation_is_toward_zero() {
        assert_eq!(truncate(&rat(-2, 3), 3), "-0.666");
        assert_eq!(truncate(&rat(7381, 2520), 9), "2.928968253");
        assert_eq!(truncate(&rat(1, 1000), 2), "0.00");
        assert_eq!(truncate(&rat(-1, 1000), 2), "-0.00");
    }

    #[test]
    fn agreed_prefix_cases() {
        let straddle = RatInterval::new(rat(-1, 10), rat(1, 10)).unwrap();
        assert_eq!(agreed_prefix(&straddle, 5), None);
        let point = RatInterval::point(rat(1, 3));
        assert_eq!(agreed_prefix(&point, 6), Some((6, "0.333333".into())));
        let across = RatInterval::new(rat(1999, 1000), rat(2001, 1000)).unwrap();
        assert_eq!(agreed_prefix(&across, 6), None);
        let neg = RatInterval::new(rat(-7721, 100000), rat(-7720, 100000)).unwrap();
        assert_eq!(agreed_prefix(&neg, 8), Some((4, "-0.0772".into())));
    }

    #[test]
    fn scientific_exponents() {
        assert_eq!(scientific(&rat(1, 1), 3), "1.00e0");
        assert_eq!(scientific(&rat(999, 1000), 3), "9.99e-1");
        assert_eq!(scientific(&rat(12345, 1), 2), "1.2e4");
    }
}
