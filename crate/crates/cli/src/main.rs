use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use harmonic_cert::approx::Method;
use harmonic_cert::verify::{run_suite, Suite, VerifyConfig};
use harmonic_cert::{Error, PrecisionBudget};

mod bench;
mod gamma;
mod table;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECISION: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "harmonic-cert", version, about = "Certified harmonic-number approximations")]
struct Cli {
    /// Bits of precision for logarithm enclosures (default 128).
    #[arg(long, global = true)]
    budget: Option<u32>,

    /// Also write the output to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an inequality suite over a range of n and print a report.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        max_n: u64,
        /// Derive γ at this n instead of the per-suite default.
        #[arg(long)]
        gamma_n: Option<u64>,
    },
    /// Print approximation values and errors as CSV/TSV.
    Table {
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
        /// Comma-separated: naive, young, quadratic, em:{log,half,quad,quartic,sextic}.
        #[arg(long, value_delimiter = ',', default_value = "quadratic", value_parser = parse_method)]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 15)]
        digits: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        gamma_n: Option<u64>,
    },
    /// Print the certified bracket on Euler's constant derived at n.
    Gamma {
        #[arg(long)]
        n: u64,
        /// Fail with exit code 3 unless this many digits are certified.
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Time naive summation against the closed-form kernels.
    Bench {
        #[arg(long = "n", value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Text destined for stdout and, with `--out`, a file.
pub struct Emitted {
    pub text: String,
    pub code: u8,
    /// Printed to stderr.
    pub diagnostic: Option<String>,
}

impl Emitted {
    pub fn ok(text: String) -> Self {
        Self { text, code: 0, diagnostic: None }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match cli.budget.map(PrecisionBudget::new).transpose() {
        Ok(b) => b.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let result = match cli.command {
        Command::Verify { suite, max_n, gamma_n } => {
            let mut config = VerifyConfig::new(max_n);
            config.budget = budget;
            config.gamma_source = gamma_n;
            run_suite(suite, &config).map(|r| Emitted {
                text: r.to_string(),
                code: r.exit_code() as u8,
                diagnostic: None,
            })
        }
        Command::Table { from, to, step, methods, digits, format, gamma_n } => {
            let opts = table::TableOptions { from, to, step, methods, digits, format, gamma_source: gamma_n, budget };
            table::render(&opts)
        }
        Command::Gamma { n, digits } => gamma::run(n, digits, cli.budget),
        Command::Bench { n_list, reps } => bench::run(&n_list, reps, budget).map(Emitted::ok),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if let Some(d) = &out.diagnostic {
                eprintln!("{d}");
            }
            if let (Some(path), false) = (cli.out, out.text.is_empty()) {
                if let Err(e) = fs::write(&path, &out.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_FAILURE);
                }
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Domain(_) => EXIT_USAGE,
                Error::Precision { .. } => EXIT_PRECISION,
                Error::Resource(_) => EXIT_FAILURE,
            })
        }
    }
}
