use harmonic_cert::approx::{approximate, Method};
use harmonic_cert::decimal::{agreed_prefix, truncate};
use harmonic_cert::harmonic::{default_gamma_source, gamma_enclosure, harmonic_enclosure};
use harmonic_cert::{Error, PrecisionBudget, RatInterval, Result};
use num_traits::Signed;

use crate::{Emitted, Format};

pub const HEADER: [&str; 6] = ["n", "method", "value", "abs_error", "certified_bound", "within_bound"];

pub struct TableOptions {
    pub from: u64,
    pub to: u64,
    pub step: u64,
    pub methods: Vec<Method>,
    pub digits: usize,
    pub format: Format,
    pub gamma_source: Option<u64>,
    pub budget: PrecisionBudget,
}

/// One (n, method) line. Decimal fields hold only digits shared by the whole
/// enclosure they were printed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    pub method: Method,
    pub value: String,
    pub abs_error: String,
    pub certified_bound: Option<String>,
    pub within_bound: Option<bool>,
}

fn abs_interval(e: &RatInterval) -> RatInterval {
    if !e.lo().is_negative() {
        e.clone()
    } else if !e.hi().is_positive() {
        -e
    } else {
        RatInterval::new(num_traits::Zero::zero(), e.magnitude()).expect("0 ≤ |e|")
    }
}

fn certified_digits(iv: &RatInterval, digits: usize) -> String {
    agreed_prefix(iv, digits).map(|(_, s)| s).unwrap_or_default()
}

pub fn rows(opts: &TableOptions) -> Result<Vec<TableRow>> {
    if opts.from == 0 || opts.to < opts.from || opts.step == 0 {
        return Err(Error::Domain(format!(
            "table needs 1 ≤ from ≤ to and step ≥ 1, got from = {}, to = {}, step = {}",
            opts.from, opts.to, opts.step
        )));
    }
    let needs_gamma = opts.methods.iter().any(|m| *m != Method::NaiveSum);
    let gamma = if needs_gamma {
        let m = opts.gamma_source.unwrap_or_else(|| default_gamma_source(opts.to));
        gamma_enclosure(m, opts.budget)?.interval()
    } else {
        RatInterval::zero()
    };
    let mut out = Vec::new();
    for n in (opts.from..=opts.to).step_by(opts.step as usize) {
        let h = harmonic_enclosure(n, opts.budget)?;
        for &method in &opts.methods {
            let r = approximate(n, method, &gamma, opts.budget)?;
            let err = abs_interval(&(&h - &r.value));
            let within = r.certified_abs_error_bound.as_ref().map(|b| err.hi() <= b);
            out.push(TableRow {
                n,
                method,
                value: certified_digits(&r.value, opts.digits),
                abs_error: certified_digits(&err, opts.digits),
                certified_bound: r.certified_abs_error_bound.as_ref().map(|b| truncate(b, opts.digits)),
                within_bound: within,
            });
        }
    }
    Ok(out)
}

pub fn render(opts: &TableOptions) -> Result<Emitted> {
    let sep = match opts.format {
        Format::Csv => ",",
        Format::Tsv => "\t",
    };
    let rows = rows(opts)?;
    if let Some(bad) = rows.iter().find(|r| r.within_bound == Some(false)) {
        return Ok(Emitted {
            text: String::new(),
            code: 1,
            diagnostic: Some(format!(
                "error: certified bound violated at n = {} for {}: |error| {} exceeds {}",
                bad.n,
                bad.method,
                bad.abs_error,
                bad.certified_bound.as_deref().unwrap_or("")
            )),
        });
    }
    let mut text = HEADER.join(sep);
    text.push('\n');
    for r in rows {
        let fields = [
            r.n.to_string(),
            r.method.to_string(),
            r.value,
            r.abs_error,
            r.certified_bound.unwrap_or_default(),
            r.within_bound.map(|b| b.to_string()).unwrap_or_default(),
        ];
        text.push_str(&fields.join(sep));
        text.push('\n');
    }
    Ok(Emitted::ok(text))
}
