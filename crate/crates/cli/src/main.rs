//! `quadlab` — command-line front end for the workbench.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error. Big integers are
//! decimal text on every surface. CSV output is UTF-8 with LF endings and a
//! header row; JSON output is a single top-level array. Identical
//! invocations produce byte-identical output, benchmark wall times
//! excepted (their op_count column is deterministic).

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use quadlab_core::experiments;
use quadlab_core::gausscensus;
use quadlab_core::lattice;
use quadlab_core::modmath::{self, Natural, Prime, Prime4m1};
use quadlab_core::quadcong::{self, QCInstance};
use quadlab_core::twosquares;

#[derive(Parser)]
#[command(name = "quadlab", version, about = "Quadratic-congruence workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for tabular results
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output to a file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for bulk enumerations (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Seed for probabilistic primality above 2^64; results below are
    /// deterministic regardless
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether some positive x < c satisfies x² ≡ a (mod b)
    Solve { a: String, b: String, c: String },
    /// Wilson half-factorial root of −1 for a prime p ≡ 1 (mod 4)
    Wilson { p: String },
    /// Two-square decomposition p = s² + t²
    Decompose {
        p: String,
        /// Use the exhaustive scan and report its visited count
        #[arg(long)]
        brute: bool,
    },
    /// Gaussian-prime census up to a norm bound
    Census {
        #[arg(long)]
        limit: u64,
        /// Append an angular histogram with this many sectors
        #[arg(long)]
        bins: Option<usize>,
    },
    /// Lattice-point counts at squared radius R
    Lattice {
        #[arg(long = "R")]
        r_squared: u64,
    },
    /// Prime-point to lattice-point ratio at squared radius R
    Ratio {
        #[arg(long = "R")]
        r_squared: u64,
    },
    /// Uniformity test suite over primes up to the limit
    Stats {
        #[arg(long)]
        limit: u64,
    },
    /// Scaling benchmark of the square-root methods on a prime grid
    Bench {
        /// Comma-separated primes p ≡ 1 (mod 4), ascending
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<String>,
        #[arg(long, default_value_t = 5)]
        reps: u32,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<quadlab_core::Error> for CliError {
    fn from(e: quadlab_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(workers) = cli.workers {
        if workers == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| CliError::Domain(format!("worker pool: {e}")))?;
    }

    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(std::fs::File::create(path).map_err(|e| {
            CliError::Domain(format!("cannot create {}: {e}", path.display()))
        })?),
        None => Box::new(std::io::stdout().lock()),
    };

    let seed = cli.seed;
    let format = cli.format;
    match cli.command {
        Command::Solve { a, b, c } => {
            let inst = QCInstance::new(parse_natural(&a)?, parse_natural(&b)?, parse_natural(&c)?)?;
            let verdict = quadcong::decide(&inst);
            match format {
                Format::Csv => match verdict.witness() {
                    Some(w) => writeln!(out, "SAT x={w}"),
                    None => writeln!(out, "UNSAT"),
                },
                Format::Json => {
                    let row = serde_json::json!([{
                        "a": inst.residue().to_string(),
                        "b": inst.modulus().to_string(),
                        "c": inst.bound().to_string(),
                        "satisfiable": verdict.satisfiable(),
                        "witness": verdict.witness().map(|w| w.to_string()),
                    }]);
                    writeln!(out, "{row}")
                }
            }
            .map_err(io_err)?;
        }

        Command::Wilson { p } => {
            let p = parse_prime4m1(&p, seed)?;
            let x = modmath::wilson_sqrt_minus_one(&p);
            let pair = modmath::sqrt_mod_prime(&(p.value() - 1u32), p.prime())
                .expect("-1 is a residue mod a 1 mod 4 prime");
            match format {
                Format::Csv => {
                    writeln!(out, "x={x} roots={{{},{}}}", pair.smaller, pair.larger)
                }
                Format::Json => {
                    let row = serde_json::json!([{
                        "p": p.value().to_string(),
                        "x": x.to_string(),
                        "root_small": pair.smaller.to_string(),
                        "root_large": pair.larger.to_string(),
                    }]);
                    writeln!(out, "{row}")
                }
            }
            .map_err(io_err)?;
        }

        Command::Decompose { p, brute } => {
            let p = parse_prime4m1(&p, seed)?;
            let (dec, visited) = if brute {
                let (dec, visited) = twosquares::decompose_brute(&p);
                (dec, Some(visited))
            } else {
                (twosquares::decompose(&p), None)
            };
            match format {
                Format::Csv => {
                    let mut line = format!("{} = {}^2 + {}^2", dec.p(), dec.s(), dec.t());
                    if let Some(v) = visited {
                        line.push_str(&format!(" (visited {v})"));
                    }
                    writeln!(out, "{line}")
                }
                Format::Json => {
                    let row = serde_json::json!([{
                        "p": dec.p().to_string(),
                        "s": dec.s().to_string(),
                        "t": dec.t().to_string(),
                        "theta": dec.theta(),
                        "visited": visited,
                    }]);
                    writeln!(out, "{row}")
                }
            }
            .map_err(io_err)?;
        }

        Command::Census { limit, bins } => {
            let census = gausscensus::enumerate_gaussian_primes(limit)?;
            let histogram = bins.map(|b| gausscensus::sector_histogram(limit, b)).transpose()?;
            match format {
                Format::Csv => {
                    gausscensus::write_census_csv(&census, &mut out)?;
                    if let Some(hist) = &histogram {
                        writeln!(out).map_err(io_err)?;
                        gausscensus::write_histogram_csv(hist, &mut out)?;
                    }
                }
                Format::Json => {
                    // single top-level array: the histogram when requested,
                    // the census rows otherwise
                    let value = match &histogram {
                        Some(hist) => {
                            let x = hist.x_limit() as f64;
                            let rows: Vec<serde_json::Value> = hist
                                .counts()
                                .iter()
                                .enumerate()
                                .map(|(i, &count)| {
                                    let lo = hist.bin_edges()[i];
                                    let hi = hist.bin_edges()[i + 1];
                                    serde_json::json!({
                                        "bin_lo": lo,
                                        "bin_hi": hi,
                                        "count": count,
                                        "expected":
                                            2.0 / std::f64::consts::PI * (hi - lo) * x / x.ln(),
                                    })
                                })
                                .collect();
                            serde_json::Value::Array(rows)
                        }
                        None => {
                            let rows: Vec<serde_json::Value> = census
                                .iter()
                                .map(|g| {
                                    serde_json::json!({
                                        "re": g.re(),
                                        "im": g.im(),
                                        "norm": g.norm(),
                                        "arg": g.arg(),
                                    })
                                })
                                .collect();
                            serde_json::Value::Array(rows)
                        }
                    };
                    writeln!(out, "{value}").map_err(io_err)?;
                }
            }
        }

        Command::Lattice { r_squared } => {
            let census = lattice::lattice_census(r_squared)?;
            match format {
                Format::Csv => lattice::write_lattice_csv(&[census], &mut out)?,
                Format::Json => {
                    let row = serde_json::json!([{
                        "R": census.r_squared,
                        "n_disc": census.n_disc,
                        "n_octant": census.n_octant,
                        "N": census.n_prime_points,
                        "ratio": census.n_prime_points as f64 / census.n_octant as f64,
                        "predicted":
                            4.0 / (std::f64::consts::PI * (census.r_squared as f64).ln()),
                        "c_fit": census.c_fit,
                    }]);
                    writeln!(out, "{row}").map_err(io_err)?;
                }
            }
        }

        Command::Ratio { r_squared } => {
            let ratio = lattice::prime_point_ratio(r_squared)?;
            match format {
                Format::Csv => lattice::write_ratio_csv(r_squared, &ratio, &mut out)?,
                Format::Json => {
                    let row = serde_json::json!([{
                        "R": r_squared,
                        "N": ratio.n_prime_points,
                        "N0": ratio.n_octant,
                        "ratio": ratio.ratio,
                        "predicted": ratio.predicted,
                        "estimate_half_pnt": ratio.estimate_half_pnt,
                        "estimate_log": ratio.estimate_log,
                    }]);
                    writeln!(out, "{row}").map_err(io_err)?;
                }
            }
        }

        Command::Stats { limit } => {
            let reports = experiments::randomness_suite(limit)?;
            match format {
                Format::Csv => experiments::write_reports_csv(&reports, &mut out)?,
                Format::Json => experiments::write_reports_json(&reports, &mut out)?,
            }
        }

        Command::Bench { grid, reps } => {
            let grid: Vec<Prime4m1> = grid
                .iter()
                .map(|entry| parse_prime4m1(entry, seed))
                .collect::<Result<_, _>>()?;
            let report = experiments::bench_sqrt_methods(&grid, reps)?;
            for fit in &report.fits {
                eprintln!(
                    "fit {}: time slope {:.4}, op-count slope {:.4}",
                    fit.op_label, fit.time_slope, fit.op_count_slope
                );
            }
            match format {
                Format::Csv => experiments::write_bench_csv(&report.samples, &mut out)?,
                Format::Json => {
                    let rows = serde_json::to_value(&report.samples)
                        .expect("samples serialize");
                    writeln!(out, "{rows}").map_err(io_err)?;
                }
            }
        }
    }
    Ok(())
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Domain(format!("write failed: {e}"))
}

fn parse_natural(text: &str) -> Result<Natural, CliError> {
    text.parse::<Natural>()
        .map_err(|_| CliError::Usage(format!("{text:?} is not a decimal natural number")))
}

fn parse_prime4m1(text: &str, seed: Option<u64>) -> Result<Prime4m1, CliError> {
    let value = parse_natural(text)?;
    let prime = match seed {
        Some(seed) => Prime::with_seed(value, seed),
        None => Prime::new(value),
    }?;
    Ok(Prime4m1::new(prime)?)
}
