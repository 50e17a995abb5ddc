//! Closed-form approximations of `Hₙ` and their error certificates.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed};

use crate::error::{domain, Error, Result};
use crate::harmonic::harmonic_enclosure;
use crate::numerics::{iv_ln, rat, rat_int, recip_pow, PrecisionBudget, RatInterval};
use crate::verdict::Verdict;

/// How much of `ln n + γ + 1/(2n) − 1/(12n²) + 1/(120n⁴) − 1/(252n⁶)` is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruncationLevel {
    /// `ln n + γ`
    LogOnly,
    /// through `1/(2n)`
    HalfN,
    /// through `−1/(12n²)`
    Quad,
    /// through `1/(120n⁴)`
    Quartic,
    /// through `−1/(252n⁶)`
    Sextic,
}

impl TruncationLevel {
    pub const ALL: [TruncationLevel; 5] = [Self::LogOnly, Self::HalfN, Self::Quad, Self::Quartic, Self::Sextic];

    /// Correction terms after `ln n + γ` as (signed numerator, denominator, power).
    const LADDER: [(i64, u64, u32); 4] = [(1, 2, 1), (-1, 12, 2), (1, 120, 4), (-1, 252, 6)];

    fn kept(self) -> usize {
        self as usize
    }

    /// The first dropped term, with its sign. `None` past the last printed
    /// term of the expansion.
    pub fn first_omitted(self, n: u64) -> Option<BigRational> {
        Self::LADDER.get(self.kept()).map(|&(s, c, k)| ladder_term(s, c, k, n))
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::LogOnly => "log",
            Self::HalfN => "half",
            Self::Quad => "quad",
            Self::Quartic => "quartic",
            Self::Sextic => "sextic",
        }
    }
}

impl FromStr for TruncationLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown truncation level '{s}'")))
    }
}

fn ladder_term(sign: i64, c: u64, k: u32, n: u64) -> BigRational {
    let t = recip_pow(c, n, k);
    if sign < 0 {
        -t
    } else {
        t
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    NaiveSum,
    YoungLinear,
    Quadratic,
    EulerMaclaurin(TruncationLevel),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::NaiveSum => f.write_str("naive"),
            Method::YoungLinear => f.write_str("young"),
            Method::Quadratic => f.write_str("quadratic"),
            Method::EulerMaclaurin(level) => write!(f, "em:{}", level.name()),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::NaiveSum),
            "young" => Ok(Method::YoungLinear),
            "quadratic" => Ok(Method::Quadratic),
            _ => match s.strip_prefix("em:") {
                Some(level) => Ok(Method::EulerMaclaurin(level.parse()?)),
                None => domain(format!("unknown method '{s}'")),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxResult {
    pub n: u64,
    pub method: Method,
    pub value: RatInterval,
    /// When present, `|Hₙ − v| ≤ bound` for every `v` in `value`.
    pub certified_abs_error_bound: Option<BigRational>,
}

impl ApproxResult {
    /// Checks the certificate against an exact (or enclosed) `Hₙ`.
    pub fn bound_verdict(&self, h: &RatInterval) -> Option<Verdict> {
        let bound = self.certified_abs_error_bound.as_ref()?;
        let err = (h - &self.value).magnitude();
        Some(if &err <= bound { Verdict::Holds } else { Verdict::Fails })
    }
}

fn log_plus_gamma(n: u64, gamma: &RatInterval, budget: PrecisionBudget) -> Result<RatInterval> {
    Ok(&iv_ln(&rat_int(n), budget)? + gamma)
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return domain("approximations need n ≥ 1");
    }
    Ok(())
}

/// `ln n + γ + 1/(2n) − 1/(12n²)`, certified to within `1/(4n³)` plus the
/// width of the enclosure.
///
/// ```
/// use harmonic_cert::approx::approx_quadratic;
/// use harmonic_cert::numerics::{rat, PrecisionBudget, RatInterval};
///
/// // with γ replaced by 0 the kernel is plain arithmetic
/// let r = approx_quadratic(1, &RatInterval::zero(), PrecisionBudget::default()).unwrap();
/// assert_eq!(r.value, RatInterval::point(rat(5, 12)));
/// ```
pub fn approx_quadratic(n: u64, gamma: &RatInterval, budget: PrecisionBudget) -> Result<ApproxResult> {
    check_n(n)?;
    let value = log_plus_gamma(n, gamma, budget)?.shift(&(recip_pow(2, n, 1) - recip_pow(12, n, 2)));
    let bound = recip_pow(4, n, 3) + value.width();
    Ok(ApproxResult { n, method: Method::Quadratic, value, certified_abs_error_bound: Some(bound) })
}

/// `ln n + γ + 1/(2n)`, the `θ = 0` end of `ln n + γ + 1/(2(n + θ))`,
/// certified to within `1/(2n) − 1/(2(n+1))` plus the enclosure width.
pub fn approx_young(n: u64, gamma: &RatInterval, budget: PrecisionBudget) -> Result<ApproxResult> {
    check_n(n)?;
    let value = log_plus_gamma(n, gamma, budget)?.shift(&recip_pow(2, n, 1));
    let bound = young_bracket_width(n) + value.width();
    Ok(ApproxResult { n, method: Method::YoungLinear, value, certified_abs_error_bound: Some(bound) })
}

/// `1/(2n) − 1/(2(n+1))`
pub fn young_bracket_width(n: u64) -> BigRational {
    recip_pow(2, n, 1) - recip_pow(2, n + 1, 1)
}

/// Left-to-right floating-point sum `1 + 1/2 + … + 1/n`. Not certified.
pub fn approx_naive_float(n: u64) -> f64 {
    (1..=n).fold(0.0, |acc, r| acc + 1.0 / r as f64)
}

/// The naive float sum as an [`ApproxResult`] carrying its exact binary value.
pub fn approx_naive(n: u64) -> Result<ApproxResult> {
    check_n(n)?;
    let v = BigRational::from_f64(approx_naive_float(n)).expect("finite sum");
    Ok(ApproxResult { n, method: Method::NaiveSum, value: RatInterval::point(v), certified_abs_error_bound: None })
}

/// A truncated Euler–Maclaurin expansion together with its actual error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmTruncation {
    pub n: u64,
    pub level: TruncationLevel,
    pub value: RatInterval,
    pub first_omitted: Option<BigRational>,
    /// `Hₙ − value`
    pub error: RatInterval,
}

impl EmTruncation {
    /// Whether the error has the sign of the first omitted term and is
    /// strictly smaller in magnitude, i.e. lies in the open interval between
    /// zero and that term.
    pub fn claim_verdict(&self) -> Option<Verdict> {
        let t = self.first_omitted.as_ref()?;
        let zero = rat(0, 1);
        let (lo, hi) = if t.is_negative() { (t, &zero) } else { (&zero, t) };
        Some(Verdict::strictly_inside(&self.error, lo, hi))
    }

    /// Sign of the error, when the enclosure decides it.
    pub fn error_sign(&self) -> Option<Ordering> {
        self.error.sign()
    }
}

/// ```
/// use harmonic_cert::approx::{approx_euler_maclaurin, TruncationLevel};
/// use harmonic_cert::harmonic::gamma_enclosure;
/// use harmonic_cert::numerics::{rat, PrecisionBudget};
/// use harmonic_cert::verdict::Verdict;
///
/// let b = PrecisionBudget::default();
/// let gamma = gamma_enclosure(10_000, b).unwrap().interval();
/// let t = approx_euler_maclaurin(10, TruncationLevel::Quad, &gamma, b).unwrap();
/// assert_eq!(t.first_omitted, Some(rat(1, 1_200_000)));
/// assert_eq!(t.claim_verdict(), Some(Verdict::Holds));
/// ```
pub fn approx_euler_maclaurin(
    n: u64,
    level: TruncationLevel,
    gamma: &RatInterval,
    budget: PrecisionBudget,
) -> Result<EmTruncation> {
    let h = harmonic_enclosure(n, budget)?;
    em_from(&h, n, level, gamma, budget)
}

pub(crate) fn em_from(
    h: &RatInterval,
    n: u64,
    level: TruncationLevel,
    gamma: &RatInterval,
    budget: PrecisionBudget,
) -> Result<EmTruncation> {
    check_n(n)?;
    let correction =
        TruncationLevel::LADDER[..level.kept()].iter().fold(rat(0, 1), |acc, &(s, c, k)| acc + ladder_term(s, c, k, n));
    let value = log_plus_gamma(n, gamma, budget)?.shift(&correction);
    let error = h - &value;
    Ok(EmTruncation { n, level, value, first_omitted: level.first_omitted(n), error })
}

/// Dispatches to the kernel for `method`.
pub fn approximate(n: u64, method: Method, gamma: &RatInterval, budget: PrecisionBudget) -> Result<ApproxResult> {
    match method {
        Method::NaiveSum => approx_naive(n),
        Method::YoungLinear => approx_young(n, gamma, budget),
        Method::Quadratic => approx_quadratic(n, gamma, budget),
        Method::EulerMaclaurin(level) => {
            let t = approx_euler_maclaurin(n, level, gamma, budget)?;
            Ok(ApproxResult { n, method, value: t.value, certified_abs_error_bound: None })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_round_trip() {
        for m in ["naive", "young", "quadratic", "em:log", "em:half", "em:quad", "em:quartic", "em:sextic"] {
            assert_eq!(m.parse::<Method>().unwrap().to_string(), m);
        }
        assert!("em:octic".parse::<Method>().is_err());
        assert!("cubic".parse::<Method>().is_err());
    }

    #[test]
    fn omitted_terms() {
        assert_eq!(TruncationLevel::LogOnly.first_omitted(3), Some(rat(1, 6)));
        assert_eq!(TruncationLevel::HalfN.first_omitted(1), Some(rat(-1, 12)));
        assert_eq!(TruncationLevel::Quad.first_omitted(10), Some(rat(1, 1_200_000)));
        assert_eq!(TruncationLevel::Quartic.first_omitted(10), Some(rat(-1, 252_000_000)));
        assert_eq!(TruncationLevel::Sextic.first_omitted(10), None);
    }

    #[test]
    fn young_bound_values() {
        assert_eq!(young_bracket_width(1), rat(1, 4));
        assert_eq!(young_bracket_width(10), rat(1, 220));
    }

    #[test]
    fn naive_float() {
        assert_eq!(approx_naive_float(1), 1.0);
        assert!((approx_naive_float(4) - 25.0 / 12.0).abs() < 1e-15);
        assert_eq!(approx_naive(1).unwrap().value, RatInterval::point(rat(1, 1)));
        assert!(approx_naive(0).is_err());
    }
}
