use std::process::ExitCode;

use charpoly_core::algebra::parse_rational;
use charpoly_core::characters::{mn_character, normalized_character};
use charpoly_core::kerov::{c_expansion_with, kerov_polynomial_with};
use charpoly_core::shift::{p_sharp, shift_schur_det, shift_schur_tableaux};
use charpoly_core::stanley::{negate_q, positivity_report_with, stanley_polynomial_with, ShapeRing};
use charpoly_core::verify::{run_reference_suite, Status};
use charpoly_core::{Error, Limits, Partition};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Exact symmetric-group characters, Kerov and Stanley polynomials.
#[derive(Parser)]
#[command(name = "charpoly", version)]
struct Cli {
    #[command(flatten)]
    budget: Budget,
    #[command(subcommand)]
    command: Command,
}

/// Raising any limit prints a warning: running time grows steeply.
#[derive(Args)]
struct Budget {
    /// Largest k for Kerov and Stanley polynomials [default: 9]
    #[arg(long, global = true)]
    max_k: Option<usize>,
    /// Largest number of rectangle blocks [default: 3]
    #[arg(long, global = true)]
    max_m: Option<usize>,
    /// Largest diagram size used by the Kerov solver [default: 25]
    #[arg(long, global = true)]
    max_n: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    #[value(name = "R")]
    R,
    #[value(name = "C")]
    C,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Degrees {
    All,
    Top,
    #[value(name = "k-1")]
    KMinus1,
    #[value(name = "k-3")]
    KMinus3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Paper,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducible character chi_shape(class), or the normalized value with --normalized
    Character {
        #[arg(long)]
        shape: String,
        #[arg(long, required_unless_present = "normalized")]
        class: Option<String>,
        #[arg(long, requires = "k")]
        normalized: bool,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Kerov polynomial Sigma_k
    Kerov {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "R")]
        basis: BasisArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Stanley polynomial F_k for m rectangles
    Stanley {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Print (-1)^k F_k(p; -q)
        #[arg(long)]
        negate_q: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Positivity of (-1)^k F_k(p; -q) for k = 1..kmax
    Positivity {
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "all")]
        degrees: Degrees,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Shifted Schur function s*_lambda(x)
    Shiftschur {
        #[arg(long)]
        lambda: String,
        /// Comma separated rationals
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// p#_mu(lambda)
    Psharp {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Reproduce the reference tables and identities
    Verify {
        #[arg(long, value_enum, default_value = "paper")]
        suite: Suite,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPartition(_)
            | Error::InvalidShape(_)
            | Error::SizeMismatch(_)
            | Error::Budget(_)
            | Error::Parse(_)
            | Error::InvalidArgument(_)
            | Error::UnknownVariable(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

fn limits(b: &Budget) -> Limits {
    let mut l = Limits::default();
    for (name, value, slot) in [("k", b.max_k, &mut l.k_max), ("m", b.max_m, &mut l.m_max), ("n", b.max_n, &mut l.n_max)] {
        if let Some(v) = value {
            if v > *slot {
                eprintln!("warning: raising the {name} limit from {} to {v}; running time grows steeply", *slot);
            }
            *slot = v;
        }
    }
    l
}

fn partition(s: &str) -> Result<Partition, Failure> {
    s.parse().map_err(Failure::from)
}

fn emit(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let limits = limits(&cli.budget);
    match cli.command {
        Command::Character { shape, class, normalized, k, format } => {
            let omega = partition(&shape)?;
            if normalized {
                let k = k.expect("clap requires --k");
                let v = normalized_character(&omega, k)?;
                emit(format, v.to_string(), json!({"shape": shape, "k": k, "normalized": v.to_string()}));
            } else {
                let class = class.expect("clap requires --class");
                let v = mn_character(&omega, &partition(&class)?)?;
                emit(format, v.to_string(), json!({"shape": shape, "class": class, "value": v.to_string()}));
            }
        }
        Command::Kerov { k, basis, format } => {
            let e = match basis {
                BasisArg::R => kerov_polynomial_with(k, &limits)?,
                BasisArg::C => c_expansion_with(k, &limits)?,
            };
            emit(format, e.to_text(), e.to_json());
        }
        Command::Stanley { k, m, negate_q: neg, format } => {
            if m > limits.m_max {
                return Err(Error::Budget(format!("m = {m} exceeds the limit {}", limits.m_max)).into());
            }
            let ring = ShapeRing::new(m)?;
            let f = stanley_polynomial_with(k, m, &limits)?;
            let f = if neg { negate_q(&ring, &f, k) } else { f };
            emit(
                format,
                ring.to_text(&f),
                json!({"k": k, "m": m, "negate_q": neg, "polynomial": f.to_json()}),
            );
        }
        Command::Positivity { kmax, m, degrees, format } => {
            let rows = positivity_report_with(kmax, m, &limits)?;
            let mut lines = Vec::new();
            let mut records = Vec::new();
            let mut all_positive = true;
            for row in &rows {
                let wanted: Vec<usize> = match degrees {
                    Degrees::All => Vec::new(),
                    Degrees::Top => vec![row.k + 1],
                    Degrees::KMinus1 => vec![row.k.saturating_sub(1)],
                    Degrees::KMinus3 => vec![row.k.saturating_sub(3)],
                };
                if degrees == Degrees::All {
                    all_positive &= row.full.positive;
                    lines.push(format!("k={} m={m} all degrees: {}", row.k, verdict(row.full.positive)));
                    records.push(json!({"k": row.k, "m": m, "degree": "all", "positive": row.full.positive}));
                }
                for d in row.by_degree.iter().filter(|d| degrees == Degrees::All || wanted.contains(&d.degree)) {
                    all_positive &= d.positivity.positive;
                    lines.push(format!("k={} m={m} degree {}: {}", row.k, d.degree, verdict(d.positivity.positive)));
                    records.push(json!({"k": row.k, "m": m, "degree": d.degree, "positive": d.positivity.positive}));
                }
            }
            emit(format, lines.join("\n"), json!({ "rows": records }));
            if !all_positive {
                return Err(Failure::Verification("a coefficient is not positive".into()));
            }
        }
        Command::Shiftschur { lambda, x, format } => {
            let lam = partition(&lambda)?;
            let xs = x.split(',').map(|t| parse_rational(t.trim())).collect::<charpoly_core::Result<Vec<_>>>()?;
            let v = match shift_schur_det(&lam, &xs) {
                Err(Error::Singular(_)) => shift_schur_tableaux(&lam, &xs)?,
                other => other?,
            };
            emit(format, v.to_string(), json!({"lambda": lambda, "x": x, "value": v.to_string()}));
        }
        Command::Psharp { mu, lambda, format } => {
            let v = p_sharp(&partition(&mu)?, &partition(&lambda)?)?;
            emit(format, v.to_string(), json!({"mu": mu, "lambda": lambda, "value": v.to_string()}));
        }
        Command::Verify { suite: Suite::Paper, format } => {
            let results = run_reference_suite();
            let text: Vec<String> = results
                .iter()
                .map(|r| {
                    let tag = match r.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Finding => "FIND",
                    };
                    format!("{:>2} [{tag}] {} | {}", r.index, r.anchor, r.detail)
                })
                .collect();
            emit(format, text.join("\n"), serde_json::to_value(&results).expect("serializable"));
            let failed = results.iter().filter(|r| r.status == Status::Fail).count();
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} item(s) failed")));
            }
        }
    }
    Ok(())
}

fn verdict(positive: bool) -> &'static str {
    if positive {
        "positive"
    } else {
        "NOT positive"
    }
}

fn configure_workers() {
    if let Some(n) = std::env::var("CHARPOLY_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            // only fails if a pool already exists, which cannot happen this early
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    configure_workers();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
