//! Exact harmonic numbers, `γₙ = Hₙ − ln n`, and Euler's constant bootstrapped
//! from the quadratic bound `0 < εₙ < 1/(4n³)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::numerics::{dyadic, iv_ln, rat, rat_int, recip_pow, PrecisionBudget, RatInterval};

/// Ranges shorter than this are summed sequentially.
const SPLIT_THRESHOLD: u64 = 64;

/// Above this `n`, [`harmonic_enclosure`] switches from exact binary
/// splitting to fixed-point summation.
pub const EXACT_ENCLOSURE_LIMIT: u64 = 1 << 18;

/// Largest `k` accepted by [`oresme_check`].
pub const ORESME_MAX_K: u32 = 22;

/// Fixed-point summation starts after this many exactly summed terms, so every
/// summand `2^128 / r` stays below `2^116`.
const FIXED_POINT_START: u64 = 1 << 12;

/// Unreduced `p/q = Σ_{r=a}^{b-1} 1/r` by binary splitting.
pub(crate) fn reciprocal_sum(a: u64, b: u64) -> (BigInt, BigInt) {
    debug_assert!(0 < a && a <= b);
    if b - a < SPLIT_THRESHOLD {
        let mut p = BigInt::zero();
        let mut q = BigInt::one();
        for r in a..b {
            p = p * r + &q;
            q *= r;
        }
        return (p, q);
    }
    let mid = a + (b - a) / 2;
    let (p1, q1) = reciprocal_sum(a, mid);
    let (p2, q2) = reciprocal_sum(mid, b);
    (p1 * &q2 + p2 * &q1, q1 * q2)
}

/// `Hₙ = 1 + 1/2 + … + 1/n` exactly, in canonical form.
///
/// Canonicalizing needs a gcd on numbers of about `n log₂ n` bits, which
/// dominates the cost for `n` beyond a few times `10⁴`. Use
/// [`harmonic_enclosure`] or [`HarmonicStream`] when an enclosure suffices.
///
/// ```
/// use harmonic_cert::harmonic::harmonic_exact;
/// use harmonic_cert::numerics::rat;
///
/// assert_eq!(harmonic_exact(4).unwrap(), rat(25, 12));
/// assert_eq!(harmonic_exact(10).unwrap(), rat(7381, 2520));
/// ```
pub fn harmonic_exact(n: u64) -> Result<BigRational> {
    if n == 0 {
        return domain("harmonic number requires n ≥ 1");
    }
    let (p, q) = reciprocal_sum(1, n + 1);
    Ok(BigRational::new(p, q))
}

/// Rigorous enclosure of `Hₙ` with width at most `n · 2^-(bits + 64)`.
///
/// Up to [`EXACT_ENCLOSURE_LIMIT`] the exact value is computed and rounded
/// outward; beyond it the terms `1/r` for `r > 4096` are summed in 128-bit
/// fixed point, each rounded down into the lower sum and up into the upper.
pub fn harmonic_enclosure(n: u64, budget: PrecisionBudget) -> Result<RatInterval> {
    if n == 0 {
        return domain("harmonic number requires n ≥ 1");
    }
    if n <= EXACT_ENCLOSURE_LIMIT {
        let (p, q) = reciprocal_sum(1, n + 1);
        return Ok(round_fraction(&p, &q, budget.bits() as u64 + 64));
    }
    let (p, q) = reciprocal_sum(1, FIXED_POINT_START + 1);
    let head = round_fraction(&p, &q, 128);
    let (lower, upper) = fixed_point_reciprocals(FIXED_POINT_START + 1, n);
    let tail = RatInterval::new(dyadic(lower, 128), dyadic(upper, 128))?;
    Ok(&head + &tail)
}

/// Running sum of 128-bit words with a separate carry count.
#[derive(Default)]
struct WideSum {
    low: u128,
    carries: u64,
}

impl WideSum {
    fn add(&mut self, x: u128) {
        let (v, overflow) = self.low.overflowing_add(x);
        self.low = v;
        self.carries += overflow as u64;
    }

    fn value(&self) -> BigInt {
        (BigInt::from(self.carries) << 128u32) + BigInt::from(self.low)
    }
}

/// Lower and upper sums of `2^128 / r` over `r ∈ [from, to]`.
fn fixed_point_reciprocals(from: u64, to: u64) -> (BigInt, BigInt) {
    let mut lower = WideSum::default();
    let mut upper = WideSum::default();
    for r in from..=to {
        let r = r as u128;
        // floor((2^128 − 1) / r) is floor(2^128 / r) unless r divides 2^128
        let q = u128::MAX / r;
        if r.is_power_of_two() {
            lower.add(q + 1);
            upper.add(q + 1);
        } else {
            lower.add(q);
            upper.add(q + 1);
        }
    }
    (lower.value(), upper.value())
}

/// Enclosure of `Σ_{r=a}^{b} 1/r` (exact sum rounded outward onto `2^-bits`).
pub fn reciprocal_sum_enclosure(a: u64, b: u64, bits: u64) -> Result<RatInterval> {
    if a == 0 || a > b {
        return domain(format!("reciprocal sum over [{a}, {b}] needs 1 ≤ a ≤ b"));
    }
    let (p, q) = reciprocal_sum(a, b + 1);
    Ok(round_fraction(&p, &q, bits))
}

/// Outward dyadic rounding of the exact fraction `p/q` (with `q > 0`).
fn round_fraction(p: &BigInt, q: &BigInt, bits: u64) -> RatInterval {
    let (fl, rem) = (p << bits).div_mod_floor(q);
    let ce = if rem.is_zero() { fl.clone() } else { &fl + 1u8 };
    RatInterval::new(dyadic(fl, bits), dyadic(ce, bits)).expect("floor ≤ ceil")
}

/// Exact partial sums `H₁, H₂, …` with the denominator kept at `lcm(1..n)`.
///
/// Each step costs a few single-limb operations on the running fraction, so
/// sweeping `n` up to `10⁴` avoids the big gcds that canonical rationals would
/// need at every step.
#[derive(Clone, Debug)]
pub struct HarmonicStream {
    n: u64,
    num: BigInt,
    den: BigInt,
}

/// One term of a [`HarmonicStream`]: `Hₙ = num/den`, not necessarily reduced.
#[derive(Clone, Debug)]
pub struct PartialHarmonic {
    pub n: u64,
    pub num: BigInt,
    pub den: BigInt,
}

impl PartialHarmonic {
    /// Canonical exact value (performs a gcd).
    pub fn exact(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }

    /// Outward rounding onto the grid `2^-bits`.
    pub fn enclosure(&self, bits: u64) -> RatInterval {
        round_fraction(&self.num, &self.den, bits)
    }
}

impl HarmonicStream {
    pub fn new() -> Self {
        Self { n: 0, num: BigInt::zero(), den: BigInt::one() }
    }
}

impl Default for HarmonicStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for HarmonicStream {
    type Item = PartialHarmonic;

    fn next(&mut self) -> Option<PartialHarmonic> {
        self.n += 1;
        let n = self.n;
        let residue = (&self.den % n).iter_u64_digits().next().unwrap_or(0);
        let g = n.gcd(&residue);
        let lift = n / g;
        if lift > 1 {
            self.den *= lift;
            self.num *= lift;
        }
        self.num += &self.den / n;
        Some(PartialHarmonic { n, num: self.num.clone(), den: self.den.clone() })
    }
}

/// Whether `H_{2^k} > 1 + k/2` holds strictly, by exact comparison.
///
/// At `k = 0` and `k = 1` the two sides are equal (`H₁ = 1`, `H₂ = 3/2`), so
/// the strict inequality is false there.
///
/// ```
/// use harmonic_cert::harmonic::oresme_check;
///
/// assert!(!oresme_check(0).unwrap());
/// assert!(!oresme_check(1).unwrap());
/// assert!(oresme_check(2).unwrap());
/// ```
pub fn oresme_check(k: u32) -> Result<bool> {
    if k > ORESME_MAX_K {
        return Err(Error::Resource(format!("2^{k} terms exceeds the limit of 2^{ORESME_MAX_K}")));
    }
    let (p, q) = reciprocal_sum(1, (1u64 << k) + 1);
    // p/q > (2 + k)/2  ⇔  2p > (2 + k) q, with q > 0
    Ok((p << 1u8) > q * BigInt::from(2 + k))
}

/// Enclosure of `γₙ = Hₙ − ln n` using the exact `Hₙ`; its width is exactly
/// the width of the logarithm enclosure.
pub fn gamma_n(n: u64, budget: PrecisionBudget) -> Result<RatInterval> {
    let h = harmonic_exact(n)?;
    let ln = iv_ln(&rat_int(n), budget)?;
    Ok((-&ln).shift(&h))
}

/// Certified bracket on Euler's constant.
///
/// Rearranging `Hₘ = ln m + γ + 1/(2m) − 1/(12m²) + εₘ` with
/// `0 < εₘ < 1/(4m³)` gives `A − 1/(4m³) < γ < A` for
/// `A = Hₘ − ln m − 1/(2m) + 1/(12m²)`; the enclosure of `A` widens the
/// bracket by its own width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaEnclosure {
    lo: BigRational,
    hi: BigRational,
    derived_at_n: u64,
}

impl GammaEnclosure {
    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn derived_at_n(&self) -> u64 {
        self.derived_at_n
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone()).expect("lo < hi")
    }
}

/// Bracket on `γ` derived at `m`; see [`GammaEnclosure`].
///
/// ```
/// use harmonic_cert::harmonic::gamma_enclosure;
/// use harmonic_cert::numerics::{rat, PrecisionBudget};
///
/// let g = gamma_enclosure(100, PrecisionBudget::default()).unwrap();
/// assert!(g.interval().contains(&rat(5_772_156_649, 10_000_000_000)));
/// ```
pub fn gamma_enclosure(m: u64, budget: PrecisionBudget) -> Result<GammaEnclosure> {
    let a = quadratic_shifted(m, budget)?;
    let lo = a.lo() - recip_pow(4, m, 3);
    Ok(GammaEnclosure { lo, hi: a.hi().clone(), derived_at_n: m })
}

/// Enclosure of `Hₘ − ln m − 1/(2m) + 1/(12m²)`.
fn quadratic_shifted(m: u64, budget: PrecisionBudget) -> Result<RatInterval> {
    let h = harmonic_enclosure(m, budget)?;
    let ln = iv_ln(&rat_int(m), budget)?;
    let poly = recip_pow(12, m, 2) - recip_pow(2, m, 1);
    Ok((&h - &ln).shift(&poly))
}

/// The γ source used when checking residuals up to `max_n`: `max(10⁴, 10·max_n)`.
pub fn default_gamma_source(max_n: u64) -> u64 {
    max_n.saturating_mul(10).max(10_000)
}

/// Enclosure of `Hₙ − ln n − γ` given `Hₙ` as an enclosure.
fn gap_to_gamma(h: &RatInterval, n: u64, gamma: &RatInterval, budget: PrecisionBudget) -> Result<RatInterval> {
    let ln = iv_ln(&rat_int(n), budget)?;
    Ok(&(h - &ln) - gamma)
}

/// `θₙ` from `Hₙ = ln n + γ + 1/(2(n + θₙ))`, i.e. `θₙ = 1/(2(Hₙ − ln n − γ)) − n`.
pub fn residual_theta(n: u64, gamma: &GammaEnclosure, budget: PrecisionBudget) -> Result<RatInterval> {
    let h = harmonic_enclosure(n, budget)?;
    theta_from(&h, n, &gamma.interval(), budget)
}

pub(crate) fn theta_from(h: &RatInterval, n: u64, gamma: &RatInterval, budget: PrecisionBudget) -> Result<RatInterval> {
    let gap = gap_to_gamma(h, n, gamma, budget)?;
    if !gap.lo().is_positive() {
        return Err(Error::Precision {
            n,
            detail: "enclosure of Hₙ − ln n − γ reaches zero; raise the budget or derive γ at a larger n".into(),
        });
    }
    let inv = gap.scale(&rat(2, 1)).recip()?;
    Ok(inv.shift(&-rat_int(n)))
}

/// `εₙ = Hₙ − ln n − γ − 1/(2n) + 1/(12n²)`.
pub fn residual_epsilon(n: u64, gamma: &GammaEnclosure, budget: PrecisionBudget) -> Result<RatInterval> {
    let h = harmonic_enclosure(n, budget)?;
    epsilon_from(&h, n, &gamma.interval(), budget)
}

pub(crate) fn epsilon_from(
    h: &RatInterval,
    n: u64,
    gamma: &RatInterval,
    budget: PrecisionBudget,
) -> Result<RatInterval> {
    let gap = gap_to_gamma(h, n, gamma, budget)?;
    Ok(gap.shift(&(recip_pow(12, n, 2) - recip_pow(2, n, 1))))
}

/// Everything known about one `n`.
#[derive(Clone, Debug)]
pub struct HarmonicRecord {
    pub n: u64,
    pub h_exact: BigRational,
    pub gamma_n: RatInterval,
    pub theta_n: RatInterval,
    pub epsilon_n: RatInterval,
}

impl HarmonicRecord {
    pub fn compute(n: u64, gamma: &GammaEnclosure, budget: PrecisionBudget) -> Result<Self> {
        let h_exact = harmonic_exact(n)?;
        let h = RatInterval::point(h_exact.clone());
        let g = gamma.interval();
        Ok(Self {
            n,
            gamma_n: gamma_n(n, budget)?,
            theta_n: theta_from(&h, n, &g, budget)?,
            epsilon_n: epsilon_from(&h, n, &g, budget)?,
            h_exact,
        })
    }
}
