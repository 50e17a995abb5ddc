use std::fmt::Write;
use std::time::{Duration, Instant};

use harmonic_cert::approx::{approx_naive_float, approx_quadratic};
use harmonic_cert::harmonic::gamma_enclosure;
use harmonic_cert::{Error, PrecisionBudget, Result};
use num_traits::ToPrimitive;

/// Relative agreement required between naive summation and the quadratic
/// formula for `n ≥ 100`.
pub const AGREEMENT_TOLERANCE: f64 = 1e-8;

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    xs[xs.len() / 2]
}

fn time<T>(reps: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut samples = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let t = Instant::now();
        let v = std::hint::black_box(f());
        samples.push(t.elapsed());
        last = Some(v);
    }
    (median(samples), last.expect("reps ≥ 1"))
}

/// Columns: n, method, median_ns, value, rel_diff_vs_naive, agrees.
///
/// `quadratic` is the closed form in double precision; `quadratic-certified`
/// is the rational-interval kernel. γ is derived once, outside the timings.
pub fn run(n_list: &[u64], reps: usize, budget: PrecisionBudget) -> Result<String> {
    if reps == 0 {
        return Err(Error::Domain("bench needs reps ≥ 1".into()));
    }
    if n_list.contains(&0) {
        return Err(Error::Domain("bench needs n ≥ 1".into()));
    }
    let gamma = gamma_enclosure(10_000, budget)?.interval();
    let gamma_f = gamma.midpoint().to_f64().expect("finite");
    let mut out = String::from("n,method,median_ns,value,rel_diff_vs_naive,agrees\n");
    for &n in n_list {
        let (t_naive, naive) = time(reps, || approx_naive_float(n));
        let (t_quad, quad) = time(reps, || {
            let x = n as f64;
            x.ln() + gamma_f + 0.5 / x - 1.0 / (12.0 * x * x)
        });
        let (t_cert, cert) = time(reps, || approx_quadratic(n, &gamma, budget));
        let cert = cert?.value.midpoint().to_f64().expect("finite");
        let check = |v: f64| {
            let rel = ((v - naive) / naive).abs();
            let agrees = n < 100 || rel <= AGREEMENT_TOLERANCE;
            (rel, agrees)
        };
        writeln!(out, "{n},naive,{},{naive:.15},0,true", t_naive.as_nanos()).unwrap();
        for (name, t, v) in [("quadratic", t_quad, quad), ("quadratic-certified", t_cert, cert)] {
            let (rel, agrees) = check(v);
            writeln!(out, "{n},{name},{},{v:.15},{rel:.3e},{agrees}", t.as_nanos()).unwrap();
        }
    }
    Ok(out)
}
