use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use psq::format::{parse_exact_vector, parse_matrix, parse_vector, CertificateFile, VectorPairFile, VerdictLabel};
use psq::report::{BdView, QuotientReport, SupQReport, WitnessReport};
use psq::table::{table1, table2, Table, TableKind, DEFAULT_TABLE2_DIMS};
use psq::verify::{run_verify, VerifyOptions};
use psq_core::cone::{certify, compute_bd, CertifyOptions};
use psq_core::exact::quotient_q_exact;
use psq_core::structured::{positivity_witness, witness_vectors};
use psq_core::{quotient_q, sup_q};

/// Power-sum quotient bounds and the matrix cone they govern.
///
/// Exit codes: 0 success or member, 1 nonmember or failed verification,
/// 2 malformed input or usage error, 3 inconclusive.
#[derive(Debug, Parser)]
#[command(name = "psq", version)]
struct Cli {
    /// Optimization tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for randomized procedures.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write JSON to this path; `-` prints JSON instead of text.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, env = "PSQ_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate Q(x, y) and its three factors.
    EvalQ {
        /// Inline vector, e.g. `1,0.5,3/4` or `[1, "1/2"]`.
        #[arg(long, allow_hyphen_values = true, requires = "y", required_unless_present = "input")]
        x: Option<String>,
        /// Inline vector.
        #[arg(long, allow_hyphen_values = true, requires = "x")]
        y: Option<String>,
        /// JSON file `{"x": [...], "y": [...]}`.
        #[arg(long, conflicts_with_all = ["x", "y"])]
        input: Option<PathBuf>,
        /// Evaluate in exact rational arithmetic.
        #[arg(long)]
        exact: bool,
    },
    /// Supremum of Q over positive vectors of the given lengths.
    SupQ { n_x: usize, n_y: usize },
    /// Cone threshold b_d for M_d(b) and its estimates.
    Bd { d: usize },
    /// Balanced-split b_d, its estimate and the cone threshold for d = 2..6.
    Table1 {
        /// Re-render a table previously written with --json.
        #[arg(long)]
        from: Option<PathBuf>,
    },
    /// Lower, witness-upper and asymptotic estimates for large d.
    Table2 {
        /// Dimensions, comma-separated.
        #[arg(long = "d", value_delimiter = ',')]
        dims: Vec<usize>,
        /// Re-render a table previously written with --json.
        #[arg(long, conflicts_with = "dims")]
        from: Option<PathBuf>,
    },
    /// Certify or refute cone membership of a matrix given as JSON (`-` for stdin).
    Certify {
        matrix: PathBuf,
        /// Random probes for general matrices.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Compare sup Q with the brute-force oracle for all lengths up to max_n.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Random oracle starts per cell.
        #[arg(long, default_value_t = 64)]
        starts: usize,
    },
    /// Explicit vector pairs.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
}

#[derive(Debug, Subcommand)]
enum WitnessKind {
    /// The pair x^(n), y^(n) whose quotient grows like c* n.
    Asymptotic {
        n: usize,
        /// Append one entry 1/n to x.
        #[arg(long)]
        extra: bool,
    },
    /// A pair with Q > 0 for lengths n_x in {n_y, n_y + 1}.
    Positivity { n_x: usize, n_y: usize },
}

struct Output {
    text: String,
    json: String,
    code: u8,
}

impl Output {
    fn ok(text: String, json: String) -> Self {
        Output { text, json, code: 0 }
    }
}

fn read_source(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn load_table(path: &Path, kind: TableKind) -> anyhow::Result<Table> {
    let table = Table::from_json(&read_source(path)?)?;
    if table.kind != kind {
        bail!("{} holds a different table", path.display());
    }
    Ok(table)
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        bail!("--tol must be finite and positive");
    }
    psq::init_threads(cli.threads).context("configuring threads")?;
    let tol = cli.tol;
    Ok(match &cli.command {
        Command::EvalQ { x, y, input, exact } => {
            let report = match (input, exact) {
                (Some(path), false) => {
                    let (x, y) = VectorPairFile::from_json(&read_source(path)?)?.floats()?;
                    QuotientReport::from(quotient_q(&x, &y))
                }
                (Some(path), true) => {
                    let (x, y) = VectorPairFile::from_json(&read_source(path)?)?.exact()?;
                    QuotientReport::from(&quotient_q_exact(&x, &y)?)
                }
                (None, exact) => {
                    let (x, y) = (x.as_deref().unwrap_or_default(), y.as_deref().unwrap_or_default());
                    if *exact {
                        let q = quotient_q_exact(&parse_exact_vector("x", x)?, &parse_exact_vector("y", y)?)?;
                        QuotientReport::from(&q)
                    } else {
                        QuotientReport::from(quotient_q(&parse_vector("x", x)?, &parse_vector("y", y)?))
                    }
                }
            };
            Output::ok(report.render(), to_json(&report))
        }
        Command::SupQ { n_x, n_y } => {
            let report = SupQReport::from(&sup_q(*n_x, *n_y, tol)?);
            Output::ok(report.render(), to_json(&report))
        }
        Command::Bd { d } => {
            let report = BdView::from(&compute_bd(*d, tol)?);
            Output::ok(report.render(), to_json(&report))
        }
        Command::Table1 { from } => {
            let table = match from {
                Some(path) => load_table(path, TableKind::SmallD)?,
                None => table1(tol)?,
            };
            Output::ok(table.render(), table.to_json())
        }
        Command::Table2 { dims, from } => {
            let table = match from {
                Some(path) => load_table(path, TableKind::LargeD)?,
                None if dims.is_empty() => table2(&DEFAULT_TABLE2_DIMS, tol)?,
                None => table2(dims, tol)?,
            };
            Output::ok(table.render(), table.to_json())
        }
        Command::Certify { matrix, samples } => {
            let m = parse_matrix(&read_source(matrix)?)?;
            let options = CertifyOptions {
                tol,
                n_samples: *samples,
                seed: cli.seed,
            };
            let file = CertificateFile::from_certificate(&certify(&m, &options)?);
            let code = match file.verdict {
                VerdictLabel::MemberCertified => 0,
                VerdictLabel::Nonmember => 1,
                VerdictLabel::Inconclusive => 3,
            };
            Output {
                text: file.render(),
                json: file.to_json(),
                code,
            }
        }
        Command::Verify { max_n, starts } => {
            if *starts == 0 {
                bail!("--starts must be at least 1");
            }
            let report = run_verify(&VerifyOptions {
                max_n: *max_n,
                seed: cli.seed,
                n_starts: *starts,
                tol,
                ..VerifyOptions::default()
            })?;
            Output {
                text: report.render(),
                json: to_json(&report),
                code: u8::from(!report.all_pass),
            }
        }
        Command::Witness { kind } => {
            let report = match kind {
                WitnessKind::Asymptotic { n, extra } => {
                    let (x, y) = witness_vectors(*n, *extra)?;
                    WitnessReport::asymptotic(*n, &x, &y)
                }
                WitnessKind::Positivity { n_x, n_y } => match positivity_witness(*n_x, *n_y)? {
                    Some(w) => WitnessReport::positivity(&w),
                    None => bail!("Q <= 0 for all positive x, y of length 1"),
                },
            };
            Output::ok(report.render(), to_json(&report))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.json.as_deref() {
                Some(p) if p.as_os_str() == "-" => println!("{}", out.json),
                Some(p) => {
                    print!("{}", out.text);
                    if let Err(e) = std::fs::write(p, format!("{}\n", out.json)) {
                        eprintln!("error: writing {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", out.text),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
