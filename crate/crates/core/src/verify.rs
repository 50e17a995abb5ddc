//! Sweeps that check every inequality and identity of the construction over
//! a range of `n`, collected into a [`VerificationReport`].

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::approx::{em_from, TruncationLevel};
use crate::decimal::scientific;
use crate::error::{domain, Error, Result};
use crate::geometry::{decompose, delta_partial_sum, sigma_series_eval, sigma_tail_from};
use crate::harmonic::{
    default_gamma_source, epsilon_from, gamma_enclosure, oresme_check, reciprocal_sum_enclosure, theta_from,
    GammaEnclosure, HarmonicStream, ORESME_MAX_K,
};
use crate::numerics::{iv_ln, rat, rat_int, recip_pow, PrecisionBudget, RatInterval};
use crate::series::{final_step_holds, sigma_tail_sandwich, simplified_sandwich_lower};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Epsilon,
    Theta,
    Sigma,
    Tails,
    Em,
    Oresme,
    Identities,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 7] =
        [Suite::Epsilon, Suite::Theta, Suite::Sigma, Suite::Tails, Suite::Em, Suite::Oresme, Suite::Identities];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Epsilon => "epsilon",
            Suite::Theta => "theta",
            Suite::Sigma => "sigma",
            Suite::Tails => "tails",
            Suite::Em => "em",
            Suite::Oresme => "oresme",
            Suite::Identities => "identities",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::INDIVIDUAL)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_n: u64,
    pub budget: PrecisionBudget,
    /// Where γ is derived; `None` picks a default per suite.
    pub gamma_source: Option<u64>,
    /// Number of random `(n, N)` pairs for the telescoping check.
    pub telescoping_pairs: usize,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(max_n: u64) -> Self {
        Self { max_n, budget: PrecisionBudget::default(), gamma_source: None, telescoping_pairs: 50, seed: 0x5eed }
    }
}

/// γ source for the truncation-error sweep: large enough that the γ bracket
/// (`≈ 1/(4m³)`) is a tenth of the smallest margin being decided, the
/// `1/(240n⁸)` gap between the quartic error and its omitted term.
pub fn em_gamma_source(max_n: u64) -> u64 {
    let needed = (600.0 * (max_n as f64).powi(8)).cbrt().ceil();
    default_gamma_source(max_n).max(needed.min(u64::MAX as f64) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub n: u64,
    pub check: String,
    pub lhs: String,
    pub rhs: String,
    /// The enclosure straddled the bound: precision, not mathematics, failed.
    pub undecided: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub range: (u64, u64),
    pub checks_run: u64,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub gamma_sources: Vec<u64>,
}

impl VerificationReport {
    fn new(suite: Suite, range: (u64, u64)) -> Self {
        Self {
            suite: suite.name().into(),
            range,
            checks_run: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            gamma_sources: Vec::new(),
        }
    }

    pub fn status(&self) -> Status {
        if self.failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// 0 on pass, 1 if any check definitely failed, 3 if the only failures
    /// are undecided enclosures.
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else if self.failures.iter().any(|f| !f.undecided) {
            1
        } else {
            3
        }
    }

    fn record(
        &mut self,
        n: u64,
        check: &str,
        verdict: Verdict,
        lhs: impl FnOnce() -> String,
        rhs: impl FnOnce() -> String,
    ) {
        self.checks_run += 1;
        if verdict != Verdict::Holds {
            self.failures.push(Failure {
                n,
                check: check.into(),
                lhs: lhs(),
                rhs: rhs(),
                undecided: verdict == Verdict::Undecided,
            });
        }
    }

    fn record_precision_error(&mut self, n: u64, check: &str, err: Error) {
        self.checks_run += 1;
        self.failures.push(Failure {
            n,
            check: check.into(),
            lhs: err.to_string(),
            rhs: String::new(),
            undecided: true,
        });
    }

    fn absorb(&mut self, other: VerificationReport) {
        self.checks_run += other.checks_run;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes.into_iter().map(|n| format!("[{}] {n}", other.suite)));
        for m in other.gamma_sources {
            if !self.gamma_sources.contains(&m) {
                self.gamma_sources.push(m);
            }
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        writeln!(f, "range: [{}, {}]", self.range.0, self.range.1)?;
        if !self.gamma_sources.is_empty() {
            let list: Vec<String> = self.gamma_sources.iter().map(u64::to_string).collect();
            writeln!(f, "gamma derived at: {}", list.join(", "))?;
        }
        writeln!(f, "checks run: {}", self.checks_run)?;
        writeln!(f, "failures: {}", self.failures.len())?;
        for x in &self.failures {
            let kind = if x.undecided { "undecided" } else { "violated" };
            writeln!(f, "  {kind}: n={} check={} lhs={} rhs={}", x.n, x.check, x.lhs, x.rhs)?;
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        let status = match self.status() {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        writeln!(f, "status: {status}")
    }
}

fn show(iv: &RatInterval) -> String {
    format!("[{}, {}]", scientific(iv.lo(), 12), scientific(iv.hi(), 12))
}

fn show_open(lo: &BigRational, hi: &BigRational) -> String {
    format!("({}, {})", scientific(lo, 12), scientific(hi, 12))
}

/// Runs `suite` over `[1, max_n]` (or `[2, max_n]` where the statement needs it).
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<VerificationReport> {
    if config.max_n < 2 {
        return domain(format!("verification needs max_n ≥ 2, got {}", config.max_n));
    }
    if suite == Suite::All {
        let mut report = VerificationReport::new(Suite::All, (1, config.max_n));
        let mut base_gamma = None;
        for s in Suite::INDIVIDUAL {
            let sub = match s {
                Suite::Epsilon | Suite::Theta | Suite::Tails => {
                    if base_gamma.is_none() {
                        base_gamma = Some(base_gamma_for(config)?);
                    }
                    run_with_gamma(s, config, base_gamma.as_ref())?
                }
                _ => run_suite(s, config)?,
            };
            report.absorb(sub);
        }
        return Ok(report);
    }
    let gamma = match suite {
        Suite::Epsilon | Suite::Theta | Suite::Tails => Some(base_gamma_for(config)?),
        _ => None,
    };
    run_with_gamma(suite, config, gamma.as_ref())
}

fn base_gamma_for(config: &VerifyConfig) -> Result<GammaEnclosure> {
    let m = config.gamma_source.unwrap_or_else(|| default_gamma_source(config.max_n));
    gamma_enclosure(m, config.budget)
}

fn run_with_gamma(suite: Suite, config: &VerifyConfig, gamma: Option<&GammaEnclosure>) -> Result<VerificationReport> {
    let max_n = config.max_n;
    let b = config.budget;
    let grid = b.bits() as u64 + 64;
    match suite {
        Suite::Epsilon => {
            let gamma = gamma.expect("gamma for epsilon");
            let g = gamma.interval();
            let mut r = VerificationReport::new(suite, (1, max_n));
            r.gamma_sources.push(gamma.derived_at_n());
            for h in HarmonicStream::new().take(max_n as usize) {
                let n = h.n;
                let eps = epsilon_from(&h.enclosure(grid), n, &g, b)?;
                let zero = rat(0, 1);
                let bound = recip_pow(4, n, 3);
                r.record(n, "epsilon>0", Verdict::greater_than(&eps, &zero), || show(&eps), || "0".into());
                r.record(
                    n,
                    "epsilon<1/(4n^3)",
                    Verdict::less_than(&eps, &bound),
                    || show(&eps),
                    || scientific(&bound, 12),
                );
            }
            Ok(r)
        }
        Suite::Theta => {
            let gamma = gamma.expect("gamma for theta");
            let g = gamma.interval();
            let mut r = VerificationReport::new(suite, (1, max_n));
            r.gamma_sources.push(gamma.derived_at_n());
            for h in HarmonicStream::new().take(max_n as usize) {
                let n = h.n;
                match theta_from(&h.enclosure(grid), n, &g, b) {
                    Ok(theta) => {
                        let v = Verdict::strictly_inside(&theta, &rat(0, 1), &rat(1, 1));
                        r.record(n, "0<theta<1", v, || show(&theta), || "(0, 1)".into());
                    }
                    Err(e @ Error::Precision { .. }) => r.record_precision_error(n, "0<theta<1", e),
                    Err(e) => return Err(e),
                }
            }
            Ok(r)
        }
        Suite::Sigma => {
            let mut r = VerificationReport::new(suite, (1, max_n));
            let one = decompose(1, b)?;
            let direct = (-&iv_ln(&rat(2, 1), b)?).shift(&rat(3, 4));
            r.record(
                1,
                "sigma1=3/4-ln2",
                Verdict::from_bool(one.sigma.intersects(&direct)),
                || show(&one.sigma),
                || show(&direct),
            );
            r.notes.push(format!(
                "n = 1 checked against 3/4 − ln 2 = {} directly; the Leibniz hypotheses fail there",
                show(&direct)
            ));
            for n in 1..=max_n {
                let t = decompose(n, b)?;
                let zero = rat(0, 1);
                r.record(n, "delta>0", Verdict::greater_than(&t.delta, &zero), || show(&t.delta), || "0".into());
                r.record(n, "sigma>0", Verdict::greater_than(&t.sigma, &zero), || show(&t.sigma), || "0".into());
                if n >= 2 {
                    let hi = recip_pow(6, n, 3);
                    let lo = &hi - recip_pow(4, n, 4);
                    let v = Verdict::strictly_inside(&t.sigma, &lo, &hi);
                    r.record(n, "sigma-leibniz-bracket", v, || show(&t.sigma), || show_open(&lo, &hi));
                }
                if (2..=500).contains(&n) {
                    for order in [3, 5, 9] {
                        let s = sigma_series_eval(n, order)?;
                        let bracket = RatInterval::new(s.lower.clone(), s.upper.clone())?;
                        let v = Verdict::from_bool(bracket.intersects(&t.sigma));
                        r.record(n, &format!("sigma-series-K{order}"), v, || show(&t.sigma), || show(&bracket));
                    }
                }
            }
            Ok(r)
        }
        Suite::Tails => {
            let gamma = gamma.expect("gamma for tails");
            let g = gamma.interval();
            let mut r = VerificationReport::new(suite, (1, max_n));
            r.gamma_sources.push(gamma.derived_at_n());
            for h in HarmonicStream::new().take(max_n as usize) {
                let n = h.n;
                r.record(
                    n,
                    "final-step",
                    Verdict::from_bool(final_step_holds(n)),
                    || scientific(&(recip_pow(12, n + 1, 2) - recip_pow(12, n, 3)), 12),
                    || scientific(&simplified_sandwich_lower(n), 12),
                );
                let tail = sigma_tail_from(&h.enclosure(grid), n, &g, b)?;
                if n == 1 {
                    r.notes
                        .push(format!("n = 1 tail Σσₚ = γ − 1/2 enclosed in {} (sandwich not asserted)", show(&tail)));
                    continue;
                }
                let s = sigma_tail_sandwich(n)?;
                let v = Verdict::strictly_inside(&tail, &s.lower, &s.upper);
                r.record(n, "sigma-tail-sandwich", v, || show(&tail), || show_open(&s.lower, &s.upper));
            }
            Ok(r)
        }
        Suite::Em => {
            let m = config.gamma_source.unwrap_or_else(|| em_gamma_source(max_n));
            let gamma = gamma_enclosure(m, b)?;
            let g = gamma.interval();
            let mut r = VerificationReport::new(suite, (2, max_n));
            r.gamma_sources.push(m);
            let levels = [TruncationLevel::HalfN, TruncationLevel::Quad, TruncationLevel::Quartic];
            for h in HarmonicStream::new().take(max_n as usize) {
                let n = h.n;
                let hn = h.enclosure(grid);
                for level in levels {
                    let t = em_from(&hn, n, level, &g, b)?;
                    let v = t.claim_verdict().expect("levels below sextic have an omitted term");
                    let omitted = t.first_omitted.clone().unwrap();
                    if n == 1 {
                        let sign = match t.error_sign() {
                            Some(std::cmp::Ordering::Greater) => "positive",
                            Some(std::cmp::Ordering::Less) => "negative",
                            _ => "undecided",
                        };
                        r.notes.push(format!(
                            "n = 1, level {}: error {} ({sign}); first omitted {}; claim {:?} (reported, not asserted)",
                            level.name(),
                            show(&t.error),
                            scientific(&omitted, 12),
                            v
                        ));
                        continue;
                    }
                    let bounds =
                        if omitted.is_negative() { (omitted.clone(), rat(0, 1)) } else { (rat(0, 1), omitted.clone()) };
                    r.record(
                        n,
                        &format!("em-{}", level.name()),
                        v,
                        || show(&t.error),
                        || show_open(&bounds.0, &bounds.1),
                    );
                }
            }
            Ok(r)
        }
        Suite::Oresme => {
            let kmax = (63 - max_n.leading_zeros()).min(ORESME_MAX_K);
            let mut r = VerificationReport::new(suite, (1, 1u64 << kmax));
            for k in 0..=kmax {
                let strict = oresme_check(k)?;
                if k < 2 {
                    r.notes.push(format!(
                        "k = {k}: H_{} = {} equals 1 + k/2 = {}; strict inequality {}",
                        1u64 << k,
                        if k == 0 { "1" } else { "3/2" },
                        if k == 0 { "1" } else { "3/2" },
                        if strict { "holds" } else { "fails (boundary case)" }
                    ));
                    continue;
                }
                r.record(
                    1 << k,
                    &format!("oresme-k{k}"),
                    Verdict::from_bool(strict),
                    || format!("H_{}", 1u64 << k),
                    || format!("1 + {k}/2"),
                );
            }
            Ok(r)
        }
        Suite::Identities => {
            let mut r = VerificationReport::new(suite, (1, max_n));
            for n in 1..=max_n {
                let t = decompose(n, b)?;
                let sum = &t.delta + &t.sigma;
                r.record(
                    n,
                    "split-identity",
                    Verdict::from_bool(sum.contains(&t.triangle_area)),
                    || show(&sum),
                    || scientific(&t.triangle_area, 12),
                );
            }
            let mut rng = StdRng::seed_from_u64(config.seed);
            for _ in 0..config.telescoping_pairs {
                let n = rng.gen_range(1..max_n);
                let big_n = rng.gen_range(n + 1..=max_n);
                let lhs = delta_partial_sum(n, big_n, b)?;
                let rhs = telescoped(n, big_n, b)?;
                r.record(
                    n,
                    &format!("telescoping-N{big_n}"),
                    Verdict::from_bool(lhs.intersects(&rhs)),
                    || show(&lhs),
                    || show(&rhs),
                );
            }
            Ok(r)
        }
        Suite::All => unreachable!("handled by run_suite"),
    }
}

/// `(ln N − ln n) − (H_N − Hₙ)`.
pub fn telescoped(n: u64, big_n: u64, budget: PrecisionBudget) -> Result<RatInterval> {
    let logs = &iv_ln(&rat_int(big_n), budget)? - &iv_ln(&rat_int(n), budget)?;
    let h_diff = reciprocal_sum_enclosure(n + 1, big_n, budget.bits() as u64 + 64)?;
    Ok(&logs - &h_diff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in ["all", "epsilon", "theta", "sigma", "tails", "em", "oresme", "identities"] {
            assert_eq!(s.parse::<Suite>().unwrap().name(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn em_source_scaling() {
        assert_eq!(em_gamma_source(2), 10_000);
        let m = em_gamma_source(1000);
        assert!((840_000_000..850_000_000).contains(&m));
    }

    #[test]
    fn rejects_tiny_range() {
        assert!(run_suite(Suite::Epsilon, &VerifyConfig::new(1)).is_err());
    }

    #[test]
    fn oresme_small_range_documents_boundary() {
        let r = run_suite(Suite::Oresme, &VerifyConfig::new(4)).unwrap();
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.checks_run, 1);
        assert_eq!(r.notes.len(), 2);
        assert!(r.notes[1].contains("3/2"));
    }

    #[test]
    fn exit_codes() {
        let mut r = VerificationReport::new(Suite::Epsilon, (1, 2));
        assert_eq!(r.exit_code(), 0);
        r.record(1, "x", Verdict::Undecided, String::new, String::new);
        assert_eq!(r.exit_code(), 3);
        r.record(2, "y", Verdict::Fails, String::new, String::new);
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.status(), Status::Fail);
    }

    #[test]
    fn undersized_gamma_source_is_a_precision_failure() {
        let mut c = VerifyConfig::new(50);
        c.gamma_source = Some(100);
        let r = run_suite(Suite::Em, &c).unwrap();
        assert_eq!(r.exit_code(), 3);
    }
}
