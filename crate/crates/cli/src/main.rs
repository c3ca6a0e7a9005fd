//! Command-line driver. Results go to stdout, diagnostics to stderr.
//! Exit codes: 0 success (and "asymmetric" / "none exists" outcomes),
//! 1 symmetric / witness-exists outcomes, 2 usage or input errors,
//! 3 infeasible or out-of-range requests, 4 exceeded budgets.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::One;

use cubecost::complement::{column_complement, row_complement};
use cubecost::construct::{asymmetric_witness_with, WitnessConfig};
use cubecost::cost::{det_qn, CostTable};
use cubecost::format;
use cubecost::hypercube::{
    aut_preservers, distinguishing_class_with, is_distinguishing_class_with, HypercubeAutomorphism,
};
use cubecost::symmetry::{exhaustive_nonexistence_with, find_symmetry_with, SearchConfig};
use cubecost::Error;

#[derive(Parser)]
#[command(
    name = "cubecost",
    version,
    about = "Exact 2-distinguishing costs of hypercubes and the asymmetric binary matrices behind them",
    max_term_width = 100
)]
struct Cli {
    /// Cap on m*n for the exhaustive nonexistence oracle.
    #[arg(long, global = true, default_value_t = 24)]
    max_exhaustive_bits: u32,

    /// Node limit for the symmetry search.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    search_budget: u64,

    /// JSON file persisting the rho/nu memo between runs.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Reserved for randomized self-tests; accepted and ignored otherwise.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print rho(Q_n), the cost of 2-distinguishing, for n >= 4 (decimal,
    /// arbitrary precision).
    Rho { n: String },
    /// Print nu_m, the fewest columns of an asymmetric m-row matrix, m >= 5.
    Nu { m: String },
    /// Print Det(Q_n) = 1 + ceil(log2 n) for n >= 2.
    Det { n: String },
    /// Print "LO HI", the interval of n with rho(Q_n) = m, for m >= 6.
    Interval { m: u64 },
    /// Emit (n, rho, det) rows for a range of n.
    Table(TableArgs),
    /// Construct an asymmetric M x N matrix.
    Witness(WitnessArgs),
    /// Decide asymmetry of a matrix file; prints "asymmetric" or the
    /// symmetry certificate as JSON.
    Check { file: PathBuf },
    /// Emit the column-class complement (--cols) or row complement (--rows).
    Complement(ComplementArgs),
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Vertex-level operations on hypercubes.
    #[command(subcommand)]
    Cube(CubeCmd),
}

#[derive(Args)]
struct TableArgs {
    #[arg(long = "n-from")]
    n_from: String,
    #[arg(long = "n-to")]
    n_to: String,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct WitnessArgs {
    m: usize,
    n: usize,
    /// Re-check the result with the symmetry engine even when large.
    #[arg(long)]
    verify: bool,
    /// Append the construction plan JSON to stderr.
    #[arg(long)]
    plan: bool,
    /// Emit the matrix as JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Output file, or "-" for stdout.
    #[arg(short, long, default_value = "-")]
    output: String,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ComplementDirection {
    /// Complement the column isomorphism classes.
    #[arg(long)]
    cols: bool,
    /// Complement the row set.
    #[arg(long)]
    rows: bool,
}

#[derive(Args)]
struct ComplementArgs {
    #[command(flatten)]
    direction: ComplementDirection,
    file: PathBuf,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exit 0 when no asymmetric M x N matrix exists, 1 when one does.
    #[command(name = "none")]
    NoneExists { m: usize, n: usize },
}

#[derive(Subcommand)]
enum CubeCmd {
    /// Verify a label-class file as a distinguishing class of Q_n.
    Verify {
        file: PathBuf,
        /// Dimension n of the hypercube.
        #[arg(long)]
        dim: usize,
        /// Also run the brute-force automorphism group path (n <= 8).
        #[arg(long)]
        group: bool,
    },
    /// Emit a minimal distinguishing class for Q_n.
    Witness { n: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::SearchBudgetExceeded(_) | Error::BudgetExceeded(_) => 4,
        Error::Parse(_) | Error::CacheInvalid(_) => 2,
        _ => 3,
    }
}

fn parse_big(s: &str) -> Result<BigUint, Error> {
    s.parse()
        .map_err(|_| Error::Parse(format!("expected a decimal integer, got {s:?}")))
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<u8, Error> {
    let search = SearchConfig {
        node_budget: cli.search_budget,
        max_exhaustive_bits: cli.max_exhaustive_bits,
        ..SearchConfig::default()
    };
    let costs = match &cli.cache {
        Some(path) if path.exists() => CostTable::from_cache_json(&read_file(path)?)?,
        _ => CostTable::new(),
    };
    let save_cache = |costs: &CostTable| -> Result<(), Error> {
        if let Some(path) = &cli.cache {
            fs::write(path, costs.to_cache_json())
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    };

    match cli.command {
        Command::Rho { n } => {
            let value = costs.rho(&parse_big(&n)?)?;
            save_cache(&costs)?;
            println!("{value}");
            Ok(0)
        }
        Command::Nu { m } => {
            let value = costs.nu(&parse_big(&m)?)?;
            save_cache(&costs)?;
            println!("{value}");
            Ok(0)
        }
        Command::Det { n } => {
            println!("{}", det_qn(&parse_big(&n)?)?);
            Ok(0)
        }
        Command::Interval { m } => {
            let (lo, hi) = costs.rho_interval(m)?;
            save_cache(&costs)?;
            println!("{lo} {hi}");
            Ok(0)
        }
        Command::Table(args) => {
            let from = parse_big(&args.n_from)?;
            let to = parse_big(&args.n_to)?;
            if from > to {
                return Err(Error::OutOfRange(format!("empty range: {from} > {to}")));
            }
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            let mut n = from;
            match args.format {
                TableFormat::Csv => {
                    writeln!(out, "n,rho,det").ok();
                    while n <= to {
                        writeln!(out, "{n},{},{}", costs.rho(&n)?, det_qn(&n)?).ok();
                        n += BigUint::one();
                    }
                }
                TableFormat::Json => {
                    let mut rows = Vec::new();
                    while n <= to {
                        rows.push(serde_json::json!({
                            "n": n.to_string(),
                            "rho": costs.rho(&n)?,
                            "det": det_qn(&n)?,
                        }));
                        n += BigUint::one();
                    }
                    writeln!(out, "{}", serde_json::Value::Array(rows)).ok();
                }
            }
            save_cache(&costs)?;
            Ok(0)
        }
        Command::Witness(args) => {
            let cfg = WitnessConfig {
                force_verify: args.verify,
                search: search.clone(),
                ..WitnessConfig::default()
            };
            let (x, plan) = asymmetric_witness_with(args.m, args.n, &cfg)?;
            if args.plan {
                eprintln!("{}", plan.to_json());
            }
            let body = if args.json {
                format!("{}\n", format::matrix_to_json(&x))
            } else {
                format!("{x}\n")
            };
            if args.output == "-" {
                print!("{body}");
            } else {
                fs::write(&args.output, body)
                    .map_err(|e| Error::Parse(format!("{}: {e}", args.output)))?;
            }
            Ok(0)
        }
        Command::Check { file } => {
            let x = format::matrix_from_str_any(&read_file(&file)?)?;
            match find_symmetry_with(&x, &search)? {
                None => {
                    println!("asymmetric");
                    Ok(0)
                }
                Some(sym) => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "sigma": sym.sigma.as_slice(),
                            "pi": sym.phi.pi(),
                            "flips": sym.phi.flip_set(),
                        })
                    );
                    Ok(1)
                }
            }
        }
        Command::Complement(args) => {
            let x = format::matrix_from_str_any(&read_file(&args.file)?)?;
            let y = if args.direction.cols {
                column_complement(&x)?
            } else {
                row_complement(&x)?
            };
            println!("{y}");
            Ok(0)
        }
        Command::Oracle(OracleCmd::NoneExists { m, n }) => {
            let mut progress = |done: u64, total: u64| {
                eprintln!("checked {done} of {total}");
            };
            if exhaustive_nonexistence_with(m, n, &search, &mut progress)? {
                println!("none");
                Ok(0)
            } else {
                println!("exists");
                Ok(1)
            }
        }
        Command::Cube(CubeCmd::Verify { file, dim, group }) => {
            let class = format::label_class_from_str_any(dim, &read_file(&file)?)?;
            let by_matrix = is_distinguishing_class_with(&class, &search)?;
            println!(
                "matrix: {}",
                if by_matrix {
                    "distinguishing"
                } else {
                    "not-distinguishing"
                }
            );
            if group {
                let by_group = aut_preservers(&class)?
                    .iter()
                    .all(HypercubeAutomorphism::is_identity);
                println!(
                    "group: {}",
                    if by_group {
                        "distinguishing"
                    } else {
                        "not-distinguishing"
                    }
                );
                if by_group != by_matrix {
                    return Err(Error::Parse(
                        "matrix and group verdicts disagree; this is a bug".into(),
                    ));
                }
            }
            Ok(if by_matrix { 0 } else { 1 })
        }
        Command::Cube(CubeCmd::Witness { n }) => {
            let cfg = WitnessConfig {
                search: search.clone(),
                ..WitnessConfig::default()
            };
            let class = distinguishing_class_with(&parse_big(&n)?, &cfg)?;
            println!("{}", format::label_class_to_text(&class));
            Ok(0)
        }
    }
}
