use harmonic_cert::decimal::{agreed_prefix, scientific, truncate};
use harmonic_cert::harmonic::gamma_enclosure;
use harmonic_cert::{Error, PrecisionBudget, Result};

use crate::Emitted;

/// Digits shown for each endpoint.
const ENDPOINT_DIGITS: usize = 30;

/// Bits for the logarithm so that its width stays far below `1/(4n³)`.
pub fn budget_for(n: u64) -> PrecisionBudget {
    let log2n = 64 - n.leading_zeros();
    PrecisionBudget::new((64 + 4 * log2n).max(PrecisionBudget::DEFAULT_BITS)).expect("positive")
}

/// Smallest `n` with `1/(4n³) < 10^-(digits+1)`; a bracket that narrow
/// usually, though not always, pins `digits` decimals.
pub fn suggested_n(digits: usize) -> u64 {
    (10f64.powi(digits as i32 + 1) / 4.0).cbrt().ceil() as u64
}

pub fn run(n: u64, digits: Option<usize>, budget_override: Option<u32>) -> Result<Emitted> {
    if n == 0 {
        return Err(Error::Domain("gamma needs n ≥ 1".into()));
    }
    let budget = match budget_override {
        Some(bits) => PrecisionBudget::new(bits)?,
        None => budget_for(n),
    };
    let g = gamma_enclosure(n, budget)?;
    let iv = g.interval();
    let (agreed, prefix) = agreed_prefix(&iv, ENDPOINT_DIGITS).unwrap_or((0, String::new()));
    let text = format!(
        "n: {n}\nlo: {}\nhi: {}\nwidth: {}\nagreed digits: {agreed}\nagreed prefix: {prefix}\n",
        truncate(g.lo(), ENDPOINT_DIGITS),
        truncate(g.hi(), ENDPOINT_DIGITS),
        scientific(&g.width(), 6),
    );
    match digits {
        Some(d) if d > agreed => {
            let suggestion = suggested_n(d).max(n + 1);
            Ok(Emitted {
                text,
                code: 3,
                diagnostic: Some(format!(
                    "error: only {agreed} digits certified at n = {n}; {d} requested. Try --n {suggestion} or larger"
                )),
            })
        }
        _ => Ok(Emitted::ok(text)),
    }
}
