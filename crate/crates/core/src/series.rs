//! Remainder bounds for convergent series: the alternating-series (Leibniz)
//! estimate and the integral-test sandwich for power-law terms.
//!
//! Convention: a [`TailBound`] produced at index `n` bounds `Σ_{p=n+1}^∞ f(p)`.
//! [`sigma_tail_sandwich`] is the one exception and is documented there.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{domain, Result};
use crate::numerics::{rat, recip_pow};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMethod {
    Leibniz,
    IntegralTest,
}

/// Rigorous bracket `[lower, upper]` on a series remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailBound {
    pub n: u64,
    pub lower: BigRational,
    pub upper: BigRational,
    pub method: TailMethod,
}

impl TailBound {
    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn at_index(mut self, n: u64) -> Self {
        self.n = n;
        self
    }
}

/// A series term `f(p) = c / p^k` with `c > 0`, `k ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerLawTerm {
    c: BigRational,
    k: u32,
}

impl PowerLawTerm {
    pub fn new(c: BigRational, k: u32) -> Result<Self> {
        if k <= 1 {
            return domain(format!("Σ c/p^{k} diverges; integral-test tails need k ≥ 2"));
        }
        if !c.is_positive() {
            return domain("power-law coefficient must be positive");
        }
        Ok(Self { c, k })
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.c
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn at(&self, p: u64) -> BigRational {
        &self.c / BigRational::from_integer(BigInt::from(p).pow(self.k))
    }

    /// `∫_x^∞ c/t^k dt = c / ((k − 1) x^(k−1))`.
    pub fn tail_integral(&self, x: u64) -> BigRational {
        &self.c * recip_pow((self.k - 1) as u64, x, self.k - 1)
    }
}

/// Leibniz bracket around a partial sum of an alternating series whose
/// remaining terms decrease monotonically to zero.
///
/// The remainder has the sign of the first omitted term and is no larger in
/// magnitude, so the sum lies between `partial_sum` and
/// `partial_sum + first_omitted`. The caller is responsible for the
/// monotonicity hypothesis.
///
/// ```
/// use harmonic_cert::numerics::rat;
/// use harmonic_cert::series::leibniz_bracket;
///
/// let b = leibniz_bracket(&rat(1, 6), &rat(-1, 4));
/// assert_eq!((b.lower, b.upper), (rat(-1, 12), rat(1, 6)));
/// ```
pub fn leibniz_bracket(partial_sum: &BigRational, first_omitted: &BigRational) -> TailBound {
    let shifted = partial_sum + first_omitted;
    let (lower, upper) =
        if first_omitted.is_negative() { (shifted, partial_sum.clone()) } else { (partial_sum.clone(), shifted) };
    TailBound { n: 0, lower, upper, method: TailMethod::Leibniz }
}

/// Integral-test bracket on `Σ_{p=n+1}^∞ c/p^k`:
/// `∫_{n+1}^∞ f < R_n < ∫_n^∞ f`.
pub fn integral_test_tail(term: &PowerLawTerm, n: u64) -> Result<TailBound> {
    if n == 0 {
        return domain("integral-test tail needs n ≥ 1");
    }
    Ok(TailBound {
        n,
        lower: term.tail_integral(n + 1),
        upper: term.tail_integral(n),
        method: TailMethod::IntegralTest,
    })
}

/// The sandwich `1/(12(n+1)²) − 1/(12n³) < Σ_{p≥n} σₚ < 1/(12n²)` on the
/// sliver tail.
///
/// Both endpoints come from [`integral_test_tail`] at index `n` applied to
/// `1/(6p³)` and `1/(4p⁴)`: the lower end is the lower bound for the first
/// minus the upper bound for the second, the upper end is the upper bound for
/// the first. Unlike other tail bounds this one is stated for the tail that
/// includes `σₙ` itself.
///
/// ```
/// use harmonic_cert::numerics::rat;
/// use harmonic_cert::series::sigma_tail_sandwich;
///
/// let s = sigma_tail_sandwich(10).unwrap();
/// assert_eq!(s.lower, rat(1, 1452) - rat(1, 12000));
/// assert_eq!(s.upper, rat(1, 1200));
/// ```
pub fn sigma_tail_sandwich(n: u64) -> Result<TailBound> {
    if n < 2 {
        return domain("the sliver sandwich needs n ≥ 2 (the Leibniz hypotheses fail at n = 1)");
    }
    let cubic = integral_test_tail(&PowerLawTerm::new(rat(1, 6), 3)?, n)?;
    let quartic = integral_test_tail(&PowerLawTerm::new(rat(1, 4), 4)?, n)?;
    Ok(TailBound { n, lower: cubic.lower - quartic.upper, upper: cubic.upper, method: TailMethod::IntegralTest })
}

/// `1/(12n²) − 1/(4n³)`, the simplified lower bound that the sandwich's lower
/// end dominates.
pub fn simplified_sandwich_lower(n: u64) -> BigRational {
    recip_pow(12, n, 2) - recip_pow(4, n, 3)
}

/// Exact check of `1/(12(n+1)²) − 1/(12n³) > 1/(12n²) − 1/(4n³)`.
pub fn final_step_holds(n: u64) -> bool {
    let lhs = recip_pow(12, n + 1, 2) - recip_pow(12, n, 3);
    lhs > simplified_sandwich_lower(n)
}
