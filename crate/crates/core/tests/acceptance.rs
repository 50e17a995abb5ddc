//! Acceptance gate. Runs every criterion, prints one line each, and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use harmonic_cert::approx::TruncationLevel;
use harmonic_cert::decimal::agreed_prefix;
use harmonic_cert::harmonic::{gamma_enclosure, harmonic_exact, oresme_check};
use harmonic_cert::numerics::{rat, rat_int};
use harmonic_cert::series::{final_step_holds, simplified_sandwich_lower};
use harmonic_cert::verify::{em_gamma_source, run_suite, Suite, VerificationReport, VerifyConfig};
use harmonic_cert::{BigRational, PrecisionBudget};
use num_traits::{One, Zero};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn suite_outcome(r: &VerificationReport, expected_checks: u64) -> Outcome {
    if let Some(f) = r.failures.first() {
        return Err(format!(
            "{} failures, first at n = {} ({}): {} vs {}",
            r.failures.len(),
            f.n,
            f.check,
            f.lhs,
            f.rhs
        ));
    }
    if r.checks_run != expected_checks {
        return Err(format!("expected {expected_checks} checks, ran {}", r.checks_run));
    }
    Ok(format!("{} checks, 0 failures", r.checks_run))
}

fn config(max_n: u64, gamma_source: Option<u64>) -> VerifyConfig {
    let mut c = VerifyConfig::new(max_n);
    c.gamma_source = gamma_source;
    c
}

fn criterion_1() -> Outcome {
    let r = run_suite(Suite::Epsilon, &config(10_000, Some(100_000))).map_err(|e| e.to_string())?;
    if r.gamma_sources != [100_000] {
        return Err(format!("gamma derived at {:?}", r.gamma_sources));
    }
    suite_outcome(&r, 2 * 10_000)
}

fn criterion_2() -> Outcome {
    let r = run_suite(Suite::Theta, &config(10_000, Some(100_000))).map_err(|e| e.to_string())?;
    suite_outcome(&r, 10_000)
}

fn criterion_3() -> Outcome {
    let r = run_suite(Suite::Sigma, &config(10_000, None)).map_err(|e| e.to_string())?;
    let bracket_checks = r.checks_run;
    // 1 direct check at n = 1, δ>0 and σ>0 for every n, the bracket for n ≥ 2,
    // three series orders for 2 ≤ n ≤ 500.
    suite_outcome(&r, 1 + 2 * 10_000 + 9_999 + 3 * 499)?;
    if !r.notes.iter().any(|n| n.contains("n = 1")) {
        return Err("n = 1 handling not documented".into());
    }
    Ok(format!("{bracket_checks} checks (n = 1 against 3/4 − ln 2), 0 failures"))
}

fn criterion_4() -> Outcome {
    let r = run_suite(Suite::Tails, &config(10_000, Some(100_000))).map_err(|e| e.to_string())?;
    // final step for every n plus the sandwich for n ≥ 2
    suite_outcome(&r, 10_000 + 9_999)
}

fn criterion_5() -> Outcome {
    let mut checked = 0u64;
    let mut sample: Vec<u64> = (1..=10_000).collect();
    let mut x = 10_000f64;
    while x < 1e6 {
        x *= 1.01;
        sample.push((x as u64).min(1_000_000));
    }
    sample.push(1_000_000);
    sample.dedup();
    for n in sample {
        if !final_step_holds(n) {
            return Err(format!("fails at n = {n}"));
        }
        // independent restatement of the same inequality
        let lhs = rat(1, 12) / rat_int((n + 1) * (n + 1)) - rat(1, 12) / rat_int(n * n * n);
        let rhs = rat(1, 12) / rat_int(n * n) - rat(1, 4) / rat_int(n * n * n);
        if !(lhs > rhs) || simplified_sandwich_lower(n) != rhs {
            return Err(format!("restatement disagrees at n = {n}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} values of n up to 10^6, all strict"))
}

fn criterion_6() -> Outcome {
    let max_n = 1000;
    let r = run_suite(Suite::Em, &config(max_n, None)).map_err(|e| e.to_string())?;
    if r.gamma_sources != [em_gamma_source(max_n)] {
        return Err(format!("gamma derived at {:?}", r.gamma_sources));
    }
    let levels = [TruncationLevel::HalfN, TruncationLevel::Quad, TruncationLevel::Quartic];
    let n1_notes = r.notes.iter().filter(|n| n.starts_with("n = 1")).count();
    if n1_notes != levels.len() {
        return Err(format!("expected {} n = 1 notes, got {n1_notes}", levels.len()));
    }
    suite_outcome(&r, 3 * (max_n - 1)).map(|s| format!("{s}; γ derived at m = {}", r.gamma_sources[0]))
}

fn criterion_7() -> Outcome {
    let b = PrecisionBudget::default();
    let p3 = agreed_prefix(&gamma_enclosure(1_000, b).map_err(|e| e.to_string())?.interval(), 30)
        .ok_or("no agreed prefix at 10^3")?
        .1;
    let p4 = agreed_prefix(&gamma_enclosure(10_000, b).map_err(|e| e.to_string())?.interval(), 30)
        .ok_or("no agreed prefix at 10^4")?
        .1;
    if !p4.starts_with("0.577") {
        return Err(format!("prefix at 10^4 is {p4}"));
    }
    if !(p4.starts_with(&p3) || p3.starts_with(&p4)) {
        return Err(format!("prefixes {p3} and {p4} are inconsistent"));
    }
    Ok(format!("10^3: {p3}, 10^4: {p4}"))
}

fn criterion_8() -> Outcome {
    let r = run_suite(Suite::Identities, &config(10_000, None)).map_err(|e| e.to_string())?;
    suite_outcome(&r, 10_000 + 50)
}

fn criterion_9() -> Outcome {
    let mut acc = BigRational::zero();
    for n in 1..=2000u64 {
        acc += BigRational::one() / rat_int(n);
        let split = harmonic_exact(n).map_err(|e| e.to_string())?;
        if split != acc {
            return Err(format!("mismatch at n = {n}"));
        }
    }
    let h4 = harmonic_exact(4).map_err(|e| e.to_string())?;
    let h10 = harmonic_exact(10).map_err(|e| e.to_string())?;
    if h4 != rat(25, 12) || h10 != rat(7381, 2520) {
        return Err(format!("H_4 = {h4}, H_10 = {h10}"));
    }
    Ok("n ≤ 2000 identical; H_4 = 25/12, H_10 = 7381/2520".into())
}

fn criterion_10() -> Outcome {
    for k in 0..=1 {
        if oresme_check(k).map_err(|e| e.to_string())? {
            return Err(format!("strict inequality unexpectedly holds at k = {k}"));
        }
    }
    let r = run_suite(Suite::Oresme, &config(1 << 20, None)).map_err(|e| e.to_string())?;
    let documented = (0..=1).all(|k| r.notes.iter().any(|n| n.starts_with(&format!("k = {k}:"))));
    if !documented {
        return Err("k ∈ {0, 1} boundary missing from report".into());
    }
    suite_outcome(&r, 19).map(|s| format!("{s}; k ∈ {{0, 1}} are equalities, reported"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("0 < ε_n < 1/(4n³), n ≤ 10^4, γ at 10^5", criterion_1),
        ("0 < θ_n < 1, n ≤ 10^4", criterion_2),
        ("σ_n bracket, 2 ≤ n ≤ 10^4", criterion_3),
        ("σ tail sandwich, 2 ≤ n ≤ 10^4", criterion_4),
        ("final algebraic step up to 10^6", criterion_5),
        ("truncation error sign and size, 2 ≤ n ≤ 10^3", criterion_6),
        ("γ agreed prefixes", criterion_7),
        ("split and telescoping identities", criterion_8),
        ("binary splitting vs incremental sum", criterion_9),
        ("H_{2^k} > 1 + k/2, 2 ≤ k ≤ 20", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name} ({detail}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
