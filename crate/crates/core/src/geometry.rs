//! Areas in the trapezoid under the chord of `y = 1/x` over `[n, n+1]`.
//!
//! The trapezoid splits into the rectangle of height `1/(n+1)`, the
//! curvilinear triangle `δₙ` between the curve and the rectangle, and the
//! sliver `σₙ` between the chord and the curve. Both curved areas reduce to
//! `ln(1 + 1/n)`, so they are carried as enclosures; the straight-edged areas
//! are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::harmonic::{harmonic_enclosure, GammaEnclosure};
use crate::numerics::{iv_ln, rat, rat_int, recip_pow, PrecisionBudget, RatInterval};
use crate::series::{leibniz_bracket, TailBound};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrapezoidDecomposition {
    pub n: u64,
    /// `1/(n+1)`
    pub rect_area: BigRational,
    /// `½(1/n − 1/(n+1))`, the straight-edged triangle on top of the rectangle
    pub triangle_area: BigRational,
    /// `ln(1 + 1/n) − 1/(n+1)`
    pub delta: RatInterval,
    /// `½(1/n + 1/(n+1)) − ln(1 + 1/n)`
    pub sigma: RatInterval,
}

impl TrapezoidDecomposition {
    /// `½(1/n + 1/(n+1))`
    pub fn trapezoid_area(&self) -> BigRational {
        (recip_pow(1, self.n, 1) + &self.rect_area) / BigInt::from(2)
    }
}

/// ```
/// use harmonic_cert::geometry::decompose;
/// use harmonic_cert::numerics::{rat, PrecisionBudget};
///
/// let t = decompose(1, PrecisionBudget::default()).unwrap();
/// assert!((&t.delta + &t.sigma).contains(&rat(1, 4)));
/// ```
pub fn decompose(n: u64, budget: PrecisionBudget) -> Result<TrapezoidDecomposition> {
    if n == 0 {
        return domain("trapezoid index must be ≥ 1");
    }
    let log_step = iv_ln(&BigRational::new(BigInt::from(n + 1), BigInt::from(n)), budget)?;
    let rect_area = recip_pow(1, n + 1, 1);
    let inv_n = recip_pow(1, n, 1);
    let half = rat(1, 2);
    let triangle_area = (&inv_n - &rect_area) * &half;
    let trapezoid = (&inv_n + &rect_area) * &half;
    let delta = log_step.shift(&-&rect_area);
    let sigma = (-&log_step).shift(&trapezoid);
    Ok(TrapezoidDecomposition { n, rect_area, triangle_area, delta, sigma })
}

/// Enclosure of `Σ_{p=n}^{N−1} δₚ`, summed term by term.
///
/// Each term is rounded outward onto a dyadic grid `2^-(bits+32)` before
/// summing, which keeps the running endpoints small.
pub fn delta_partial_sum(n: u64, big_n: u64, budget: PrecisionBudget) -> Result<RatInterval> {
    if n == 0 || n >= big_n {
        return domain(format!("delta partial sum needs 1 ≤ n < N, got n = {n}, N = {big_n}"));
    }
    let grid = budget.bits() as u64 + 32;
    let mut acc = RatInterval::zero();
    for p in n..big_n {
        acc = &acc + &decompose(p, budget)?.delta.round_outward(grid);
    }
    Ok(acc)
}

/// Enclosure of `Σ_{p=n}^∞ δₚ = γₙ − γ`.
pub fn delta_tail(n: u64, gamma: &GammaEnclosure, budget: PrecisionBudget) -> Result<RatInterval> {
    let h = harmonic_enclosure(n, budget)?;
    delta_tail_from(&h, n, &gamma.interval(), budget)
}

pub(crate) fn delta_tail_from(
    h: &RatInterval,
    n: u64,
    gamma: &RatInterval,
    budget: PrecisionBudget,
) -> Result<RatInterval> {
    let ln = iv_ln(&rat_int(n), budget)?;
    Ok(&(h - &ln) - gamma)
}

/// Enclosure of `Σ_{p=n}^∞ σₚ = 1/(2n) − (Hₙ − ln n − γ)`.
///
/// ```
/// use harmonic_cert::geometry::sigma_tail;
/// use harmonic_cert::harmonic::gamma_enclosure;
/// use harmonic_cert::numerics::{rat, PrecisionBudget};
///
/// let b = PrecisionBudget::default();
/// let gamma = gamma_enclosure(10_000, b).unwrap();
/// let tail = sigma_tail(10, &gamma, b).unwrap();
/// assert!(tail.strictly_inside(&(rat(1, 1452) - rat(1, 12000)), &rat(1, 1200)));
/// ```
pub fn sigma_tail(n: u64, gamma: &GammaEnclosure, budget: PrecisionBudget) -> Result<RatInterval> {
    let h = harmonic_enclosure(n, budget)?;
    sigma_tail_from(&h, n, &gamma.interval(), budget)
}

pub(crate) fn sigma_tail_from(
    h: &RatInterval,
    n: u64,
    gamma: &RatInterval,
    budget: PrecisionBudget,
) -> Result<RatInterval> {
    let d = delta_tail_from(h, n, gamma, budget)?;
    Ok((-&d).shift(&recip_pow(2, n, 1)))
}

/// One term `c_k / n^k` of the sliver expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSeriesTerm {
    pub k: u32,
    pub coefficient: BigRational,
}

impl SigmaSeriesTerm {
    pub fn new(k: u32) -> Result<Self> {
        Ok(Self { k, coefficient: sigma_series_coefficient(k)? })
    }

    pub fn at(&self, n: u64) -> BigRational {
        &self.coefficient / BigRational::from_integer(BigInt::from(n).pow(self.k))
    }
}

/// `(−1)^(k+1) (1/2 − 1/k)`, the coefficient of `n^-k` in `σₙ`.
///
/// ```
/// use harmonic_cert::geometry::sigma_series_coefficient;
/// use harmonic_cert::numerics::rat;
///
/// assert_eq!(sigma_series_coefficient(3).unwrap(), rat(1, 6));
/// assert_eq!(sigma_series_coefficient(4).unwrap(), rat(-1, 4));
/// assert_eq!(sigma_series_coefficient(5).unwrap(), rat(3, 10));
/// assert_eq!(sigma_series_coefficient(6).unwrap(), rat(-1, 3));
/// ```
pub fn sigma_series_coefficient(k: u32) -> Result<BigRational> {
    if k < 3 {
        return domain(format!("the sliver expansion starts at n^-3, got k = {k}"));
    }
    let magnitude = rat(1, 2) - rat(1, k as i64);
    Ok(if k % 2 == 1 { magnitude } else { -magnitude })
}

/// Leibniz bracket on `σₙ` from the expansion truncated after `n^-order`.
///
/// The term magnitudes `(1/2 − 1/k)/n^k` decrease from `k` on exactly when
/// `(k − 1)k ≤ n(k + 1)(k − 2)`; the ratio on the left shrinks with `k`, so
/// checking `k = order` covers the whole remainder. This never holds at
/// `n = 1`, where the series does not even converge.
pub fn sigma_series_eval(n: u64, order: u32) -> Result<TailBound> {
    if order < 3 {
        return domain(format!("truncation order must be ≥ 3, got {order}"));
    }
    if n == 0 {
        return domain("sliver index must be ≥ 1");
    }
    let k = order as u64;
    if (k - 1) * k > n * (k + 1) * (k - 2) {
        return domain(format!(
            "sliver series terms do not decrease monotonically at n = {n} from order {order}; the Leibniz estimate does not apply"
        ));
    }
    let partial = (3..=order)
        .map(|k| SigmaSeriesTerm::new(k).map(|t| t.at(n)))
        .try_fold(BigRational::zero(), |acc, t| t.map(|t| acc + t))?;
    let next = SigmaSeriesTerm::new(order + 1)?.at(n);
    Ok(leibniz_bracket(&partial, &next).at_index(order as u64))
}

/// Smallest order `K ≥ 3` with `½ n^-(K+1)` below one percent of `target`.
pub fn default_sigma_order(n: u64, target: &BigRational) -> Result<u32> {
    if n < 2 {
        return domain("the sliver series needs n ≥ 2");
    }
    let goal = target / BigInt::from(100);
    let mut order = 3u32;
    while rat(1, 2) / BigRational::from_integer(BigInt::from(n).pow(order + 1)) >= goal {
        order += 1;
    }
    Ok(order)
}
