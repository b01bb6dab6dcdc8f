use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use borel_core::borel::{diagonalizing_borel, orbit_limit};
use borel_core::instance::{generate_instance, GenerationMode};
use borel_core::invariants::{quotient_map, InvariantVector};
use borel_core::matrix::check_dim;
use borel_core::moment::{moment, solve_subdiagonal_s, surjectivity_witness, TargetPoint, WitnessMode};
use borel_core::symbolic::{initial_terms, regular_sequence_certificate_bounded, DEFAULT_SYMBOLIC_MAX};
use borel_core::verify::{parse_suites, run_suite, SuiteConfig};
use borel_core::{parse_rational, BorelMatrix, Matrix, Quadruple, Rational};

/// Exact computations for the Borel moment map on T*(b x C^n).
///
/// Quadruples are read as JSON `{"n","r","s","i","j"}` with rationals as
/// strings like "-3/4". INPUT arguments are file paths, or `-` for stdin.
#[derive(Parser)]
#[command(name = "borel", version)]
struct Cli {
    /// Dimension.
    #[arg(long, global = true, default_value_t = 3)]
    n: usize,
    /// Lower end of the dimension range for `verify`.
    #[arg(long, global = true, default_value_t = 2)]
    n_min: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trials per dimension for `verify`.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Emit JSON where text is the default.
    #[arg(long, global = true)]
    json: bool,
    /// Bound on numerators and denominators of random rationals.
    #[arg(long, global = true, default_value_t = 20)]
    max_coeff: u32,
    /// Largest accepted dimension.
    #[arg(long, global = true, default_value_t = borel_core::matrix::DEFAULT_MAX_DIM)]
    max_n: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Random quadruple with regular semisimple r.
    Gen {
        #[arg(long, default_value = "fiber")]
        mode: GenerationMode,
    },
    /// proj([r, s] + i j).
    Moment { input: String },
    /// Solve the subdiagonal of s so that the off-diagonal moment vanishes.
    Solve {
        /// Rows of r as JSON, inline or a file path.
        #[arg(long)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        i: String,
        #[arg(long, allow_hyphen_values = true)]
        j: String,
        #[arg(long, allow_hyphen_values = true)]
        diag_s: String,
    },
    /// A fiber point over the target (x, y).
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Non-diagonal witness drawn from --seed.
        #[arg(long)]
        generic: bool,
    },
    /// P(q) = (H, G) on the regular semisimple zero fiber.
    Quotient { input: String },
    /// F, G, H, K at a point.
    Invariants { input: String },
    /// Closed-orbit limit along a one-parameter subgroup.
    Limit { input: String },
    /// Borel element conjugating r to its diagonal.
    Diag {
        /// Rows of r as JSON, inline or a file path.
        #[arg(long)]
        r: String,
        /// Diagonal of b.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
    },
    /// Initial terms of the symbolic F_1..F_n.
    InitialTerms,
    /// Regular-sequence certificate from the initial terms.
    Regseq,
    /// Run a verification suite: idempotents, diagonalize, invariance,
    /// limits, solver, symbolic or all.
    Verify { suite: String },
}

/// Input or usage problem; exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| Failure(format!("{path}: {e}")))
    }
}

fn read_quadruple(cli: &Cli, path: &str) -> Result<Quadruple<Rational>, Failure> {
    let q: Quadruple<Rational> = serde_json::from_str(&read_input(path)?)?;
    check_dim(q.dim(), cli.max_n)?;
    Ok(q)
}

fn read_r(cli: &Cli, arg: &str) -> Result<BorelMatrix<Rational>, Failure> {
    let text = if arg.trim_start().starts_with('[') { arg.to_string() } else { read_input(arg)? };
    let r: BorelMatrix<Rational> = serde_json::from_str(&text)?;
    check_dim(r.dim(), cli.max_n)?;
    Ok(r)
}

fn parse_list(text: &str) -> Result<Vec<Rational>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| parse_rational(t.trim()).map_err(Failure::from)).collect()
}

fn print(value: &impl serde::Serialize) -> Result<(), Failure> {
    emit(&serde_json::to_string(value)?)
}

/// Writes one line to stdout; a closed pipe is not an error.
fn emit(line: &str) -> Result<(), Failure> {
    match writeln!(io::stdout().lock(), "{line}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn rows(m: &Matrix<Rational>) -> Value {
    serde_json::to_value(m).expect("matrices serialize")
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Gen { mode } => {
            check_dim(cli.n, cli.max_n)?;
            print(&generate_instance(cli.n, cli.seed, *mode, cli.max_coeff)?)?;
        }
        Command::Moment { input } => {
            let q = read_quadruple(cli, input)?;
            print(&moment(&q))?;
        }
        Command::Solve { r, i, j, diag_s } => {
            let r = read_r(cli, r)?;
            let s = solve_subdiagonal_s(&r, &parse_list(i)?, &parse_list(j)?, &parse_list(diag_s)?)?;
            print(&s)?;
        }
        Command::Witness { x, y, generic } => {
            let t = TargetPoint::new(parse_list(x)?, parse_list(y)?)?;
            check_dim(t.dim(), cli.max_n)?;
            let mode = if *generic {
                WitnessMode::Generic { seed: cli.seed, max_coeff: cli.max_coeff }
            } else {
                WitnessMode::Canonical
            };
            print(&surjectivity_witness(&t, mode)?)?;
        }
        Command::Quotient { input } => {
            let q = read_quadruple(cli, input)?;
            print(&quotient_map(&q)?)?;
        }
        Command::Invariants { input } => {
            let q = read_quadruple(cli, input)?;
            print(&InvariantVector::of(&q)?)?;
        }
        Command::Limit { input } => {
            let q = read_quadruple(cli, input)?;
            print(&orbit_limit(&q)?)?;
        }
        Command::Diag { r, d } => {
            let r = read_r(cli, r)?;
            let d = d.as_deref().map(parse_list).transpose()?;
            let diag = diagonalizing_borel(&r, d.as_deref())?;
            print(&json!({ "b": rows(diag.b.matrix()), "b_inv": rows(diag.b_inv.matrix()) }))?;
        }
        Command::InitialTerms => {
            let terms = initial_terms(cli.n, DEFAULT_SYMBOLIC_MAX)?;
            if cli.json {
                print(&terms)?;
            } else {
                for t in &terms {
                    emit(&format!(
                        "F_{}: In = {}  coefficient_is_one = {}  terms = {}",
                        t.iota, t.initial_monomial, t.coefficient_is_one, t.support_size
                    ))?;
                }
            }
        }
        Command::Regseq => {
            let cert = regular_sequence_certificate_bounded(cli.n, DEFAULT_SYMBOLIC_MAX)?;
            if cli.json {
                print(&cert)?;
            } else {
                let monomials: Vec<String> =
                    cert.initial_terms.iter().map(|t| t.initial_monomial.to_string()).collect();
                emit(&format!("n = {}  initial terms: {}", cert.n, monomials.join(", ")))?;
                for (name, ok) in cert.checks.iter() {
                    emit(&format!("  {name}: {}", if ok { "pass" } else { "fail" }))?;
                }
                emit(&format!("  coprime pairs: {}", cert.coprime_pairs))?;
                emit(&format!("certificate: {}", if cert.pass { "PASS" } else { "FAIL" }))?;
            }
            if !cert.pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify { suite } => {
            let suites = parse_suites(suite)?;
            check_dim(cli.n, cli.max_n)?;
            let config = SuiteConfig {
                n_min: cli.n_min,
                n_max: cli.n,
                trials: cli.trials,
                seed: cli.seed,
                max_coeff: cli.max_coeff,
            };
            let reports = suites.iter().map(|&s| run_suite(s, &config)).collect::<Result<Vec<_>, _>>()?;
            if cli.json {
                if reports.len() == 1 {
                    print(&reports[0])?;
                } else {
                    print(&reports)?;
                }
            } else {
                for r in &reports {
                    emit(&format!("{r}"))?;
                }
            }
            if !reports.iter().all(|r| r.all_pass()) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
