//! Exact rational arithmetic and rational-endpoint interval arithmetic.
//!
//! Interval endpoints are exact [`BigRational`]s, so the four arithmetic
//! operations need no directed rounding: the only source of width in an
//! enclosure is [`iv_ln`], which truncates a convergent series and adds a
//! rigorous bound on the remainder.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

/// Shorthand for the rational `num / den`.
///
/// Panics if `den == 0`; use [`rat_div`] for fallible division.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a rational.
pub fn rat_int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_add(a: &BigRational, b: &BigRational) -> BigRational {
    a + b
}

pub fn rat_sub(a: &BigRational, b: &BigRational) -> BigRational {
    a - b
}

pub fn rat_mul(a: &BigRational, b: &BigRational) -> BigRational {
    a * b
}

pub fn rat_div(a: &BigRational, b: &BigRational) -> Result<BigRational> {
    if b.is_zero() {
        return domain("rational division by zero");
    }
    Ok(a / b)
}

/// `1 / (c · n^k)` for a positive integer `n`.
pub(crate) fn recip_pow(c: u64, n: u64, k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(c) * BigInt::from(n).pow(k))
}

/// Canonical rational `m / 2^bits` built without a general gcd.
pub(crate) fn dyadic(m: BigInt, bits: u64) -> BigRational {
    if m.is_zero() {
        return BigRational::zero();
    }
    let shift = m.trailing_zeros().unwrap_or(0).min(bits);
    BigRational::new_raw(m >> shift, BigInt::one() << (bits - shift))
}

/// `floor(x · 2^bits)`.
pub(crate) fn floor_scaled(x: &BigRational, bits: u64) -> BigInt {
    (x.numer() << bits).div_floor(x.denom())
}

/// `ceil(x · 2^bits)`.
pub(crate) fn ceil_scaled(x: &BigRational, bits: u64) -> BigInt {
    -((-(x.numer() << bits)).div_floor(x.denom()))
}

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return domain(format!("empty interval [{lo}, {hi}]"));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: BigRational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    /// True when `other ⊆ self`.
    pub fn encloses(&self, other: &RatInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// True when the interval lies in the open interval `(lo, hi)`.
    pub fn strictly_inside(&self, lo: &BigRational, hi: &BigRational) -> bool {
        lo < &self.lo && &self.hi < hi
    }

    pub fn intersect(&self, other: &RatInterval) -> Option<RatInterval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(RatInterval { lo, hi })
    }

    pub fn intersects(&self, other: &RatInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &RatInterval) -> RatInterval {
        RatInterval { lo: (&self.lo).min(&other.lo).clone(), hi: (&self.hi).max(&other.hi).clone() }
    }

    /// Largest absolute value over the interval.
    pub fn magnitude(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn scale(&self, c: &BigRational) -> RatInterval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            RatInterval { lo: b, hi: a }
        } else {
            RatInterval { lo: a, hi: b }
        }
    }

    pub fn shift(&self, c: &BigRational) -> RatInterval {
        RatInterval { lo: &self.lo + c, hi: &self.hi + c }
    }

    pub fn recip(&self) -> Result<RatInterval> {
        if self.contains_zero() {
            return domain(format!("reciprocal of interval containing zero [{}, {}]", self.lo, self.hi));
        }
        Ok(RatInterval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn checked_div(&self, rhs: &RatInterval) -> Result<RatInterval> {
        Ok(self * &rhs.recip()?)
    }

    /// Outward rounding of both endpoints onto the grid `2^-bits`.
    ///
    /// The result encloses `self` and has power-of-two denominators, which
    /// keeps long sums of enclosures cheap.
    pub fn round_outward(&self, bits: u64) -> RatInterval {
        if self.lo.denom().is_one() && self.hi.denom().is_one() {
            return self.clone();
        }
        RatInterval { lo: dyadic(floor_scaled(&self.lo, bits), bits), hi: dyadic(ceil_scaled(&self.hi, bits), bits) }
    }

    /// Sign of the interval when it is decided: `Some(Greater)` if every
    /// member is positive, `Some(Less)` if every member is negative.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.is_point() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl From<BigRational> for RatInterval {
    fn from(x: BigRational) -> Self {
        RatInterval::point(x)
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &RatInterval {
    type Output = RatInterval;
    fn add(self, rhs: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &RatInterval {
    type Output = RatInterval;
    fn sub(self, rhs: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Mul for &RatInterval {
    type Output = RatInterval;
    fn mul(self, rhs: &RatInterval) -> RatInterval {
        let products = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }
}

impl Neg for &RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        RatInterval { lo: -&self.hi, hi: -&self.lo }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for RatInterval {
            type Output = RatInterval;
            fn $method(self, rhs: RatInterval) -> RatInterval {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub fn iv_add(a: &RatInterval, b: &RatInterval) -> RatInterval {
    a + b
}

pub fn iv_sub(a: &RatInterval, b: &RatInterval) -> RatInterval {
    a - b
}

pub fn iv_mul(a: &RatInterval, b: &RatInterval) -> RatInterval {
    a * b
}

pub fn iv_div(a: &RatInterval, b: &RatInterval) -> Result<RatInterval> {
    a.checked_div(b)
}

/// Working precision for [`iv_ln`]: the truncated series remainder is kept
/// below `2^-bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrecisionBudget {
    bits: u32,
}

impl PrecisionBudget {
    pub const DEFAULT_BITS: u32 = 128;

    pub fn new(bits: u32) -> Result<Self> {
        if bits == 0 {
            return domain("precision budget must be positive");
        }
        Ok(Self { bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }
}

impl Default for PrecisionBudget {
    /// 128 bits: `width(iv_ln(n)) < 1e-30` for every `n ≤ 10^6`.
    fn default() -> Self {
        Self { bits: Self::DEFAULT_BITS }
    }
}

/// Certified enclosure of `ln x` for rational `x > 0`.
///
/// The argument is reduced to `x = 2^k · m` with `m ∈ [1, 2)`, and
/// `ln m = 2 atanh((m − 1)/(m + 1))` is summed from its odd power series.
/// With `t = (m − 1)/(m + 1) < 1/3` the terms shrink by at least `t² < 1/9`,
/// so the remainder after `J` terms is at most
/// `2 t^(2J+1) / ((2J + 1)(1 − t²))`. The enclosure for `ln 2` is produced
/// the same way from `t = 1/3`.
///
/// ```
/// use harmonic_cert::numerics::{iv_ln, rat, PrecisionBudget};
///
/// let ln2 = iv_ln(&rat(2, 1), PrecisionBudget::default()).unwrap();
/// assert!(ln2.lo() < &rat(693_147_180_559_946, 1_000_000_000_000_000));
/// assert!(ln2.hi() > &rat(693_147_180_559_945, 1_000_000_000_000_000));
/// ```
pub fn iv_ln(x: &BigRational, budget: PrecisionBudget) -> Result<RatInterval> {
    if !x.is_positive() {
        return domain(format!("logarithm of non-positive value {x}"));
    }
    if x.is_one() {
        return Ok(RatInterval::zero());
    }
    let (k, p, q) = reduce_by_powers_of_two(x);
    let reduced = atanh_enclosure(&(&p - &q), &(&p + &q), budget.bits);
    if k == 0 {
        return Ok(reduced);
    }
    let ln2 = atanh_enclosure(&BigInt::one(), &BigInt::from(3), budget.bits);
    Ok(&reduced + &ln2.scale(&BigRational::from_integer(BigInt::from(k))))
}

/// Writes `x = 2^k · p/q` with `q ≤ p < 2q`.
fn reduce_by_powers_of_two(x: &BigRational) -> (i64, BigInt, BigInt) {
    let mut p = x.numer().clone();
    let mut q = x.denom().clone();
    let mut k = p.bits() as i64 - q.bits() as i64;
    if k > 0 {
        q <<= k as u64;
    } else if k < 0 {
        p <<= (-k) as u64;
    }
    // bit lengths now agree, so p/q ∈ (1/2, 2)
    if p < q {
        p <<= 1u8;
        k -= 1;
    }
    debug_assert!(q <= p && p < (&q << 1u8));
    (k, p, q)
}

/// Enclosure of `2 atanh(a/b)` for integers `0 ≤ a < b` with `a/b ≤ 1/3`.
///
/// Terms are accumulated in fixed point with scale `2^(bits + guard)`: the
/// lower sum rounds every term down and the upper sum rounds every term up
/// and adds the rounded-up remainder bound.
fn atanh_enclosure(a: &BigInt, b: &BigInt, bits: u32) -> RatInterval {
    debug_assert!(a.sign() != Sign::Minus && a < b);
    if a.is_zero() {
        return RatInterval::zero();
    }
    let a2 = a * a;
    let b2 = b * b;
    let gap = &b2 - &a2;
    let two_b2 = &b2 << 1u8;

    // Smallest J with remainder ≤ 2^-bits:
    // 2 a^(2J+1) b² 2^bits ≤ (2J+1) b^(2J+1) (b² − a²).
    let mut terms = 1u64;
    let mut num_pow = a * &a2;
    let mut den_pow = b * &b2;
    loop {
        let lhs = (&num_pow * &two_b2) << bits;
        let rhs = BigInt::from(2 * terms + 1) * &den_pow * &gap;
        if lhs <= rhs {
            break;
        }
        terms += 1;
        num_pow *= &a2;
        den_pow *= &b2;
    }

    let guard = 8 + 2 * (64 - terms.leading_zeros() as u64);
    let scale = bits as u64 + guard;
    let mut lower = BigInt::zero();
    let mut upper = BigInt::zero();
    let mut num_pow = a.clone();
    let mut den_pow = b.clone();
    for j in 0..terms {
        let numer = &num_pow << (scale + 1);
        let denom = &den_pow * BigInt::from(2 * j + 1);
        let (q, r) = numer.div_rem(&denom);
        if !r.is_zero() {
            upper += 1u8;
        }
        upper += &q;
        lower += q;
        num_pow *= &a2;
        den_pow *= &b2;
    }
    // num_pow = a^(2J+1), den_pow = b^(2J+1)
    let tail_numer = (&num_pow * &two_b2) << scale;
    let tail_denom = BigInt::from(2 * terms + 1) * &den_pow * &gap;
    let (q, r) = tail_numer.div_rem(&tail_denom);
    upper += q;
    if !r.is_zero() {
        upper += 1u8;
    }
    RatInterval { lo: dyadic(lower, scale), hi: dyadic(upper, scale) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn iv(lo: i64, hi: i64) -> RatInterval {
        RatInterval::new(rat(lo, 1), rat(hi, 1)).unwrap()
    }

    #[test]
    fn rational_ops() {
        assert_eq!(rat_add(&rat(1, 2), &rat(1, 3)), rat(5, 6));
        assert_eq!(rat_mul(&rat(2, 4), &rat(2, 2)), rat(1, 2));
        assert_eq!(rat_div(&rat(1, 1), &rat(3, 1)).unwrap(), rat(1, 3));
        assert_eq!(rat_sub(&rat(1, 2), &rat(1, 2)), rat(0, 1));
        assert!(matches!(rat_div(&rat(1, 1), &rat(0, 1)), Err(Error::Domain(_))));
        let x = rat_mul(&rat(6, 4), &rat(10, 3));
        assert_eq!((x.numer().clone(), x.denom().clone()), (BigInt::from(5), BigInt::from(1)));
    }

    #[test]
    fn interval_ops() {
        assert_eq!(iv_add(&iv(1, 2), &iv(3, 4)), iv(4, 6));
        assert_eq!(iv_mul(&iv(-1, 2), &iv(3, 3)), iv(-3, 6));
        assert_eq!(iv_sub(&iv(0, 0), &iv(1, 1)), iv(-1, -1));
        assert_eq!(iv_div(&iv(1, 2), &iv(2, 4)).unwrap(), RatInterval::new(rat(1, 4), rat(1, 1)).unwrap());
        assert!(matches!(iv_div(&iv(1, 2), &iv(-1, 1)), Err(Error::Domain(_))));
        assert!(RatInterval::new(rat(2, 1), rat(1, 1)).is_err());
    }

    #[test]
    fn round_outward_encloses() {
        let x = RatInterval::new(rat(1, 3), rat(2, 3)).unwrap();
        let r = x.round_outward(10);
        assert!(r.encloses(&x));
        assert!(r.width() - x.width() <= rat(2, 1024));
        assert_eq!(r.lo().denom(), &BigInt::from(1024));
    }

    #[test]
    fn ln_of_one_is_exact_zero() {
        for bits in [1, 64, 200] {
            assert_eq!(iv_ln(&rat(1, 1), PrecisionBudget::new(bits).unwrap()).unwrap(), RatInterval::zero());
        }
    }

    #[test]
    fn ln_rejects_non_positive() {
        assert!(iv_ln(&rat(0, 1), PrecisionBudget::default()).is_err());
        assert!(iv_ln(&rat(-3, 2), PrecisionBudget::default()).is_err());
    }

    #[test]
    fn argument_reduction() {
        for (x, k) in [(rat(1, 3), -2), (rat(2, 1), 1), (rat(3, 1), 1), (rat(1024, 1), 10), (rat(7, 5), 0)] {
            let (got, p, q) = reduce_by_powers_of_two(&x);
            assert_eq!(got, k, "{x}");
            assert!(q <= p && p < &q * 2);
        }
    }

    #[test]
    fn default_budget_width() {
        let tiny = BigRational::new(BigInt::one(), BigInt::from(10).pow(30));
        for n in [2u64, 3, 10, 999_983, 1_000_000] {
            let w = iv_ln(&rat_int(n), PrecisionBudget::default()).unwrap().width();
            assert!(w < tiny, "n = {n}");
        }
    }
}
