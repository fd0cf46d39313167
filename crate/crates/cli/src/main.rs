use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use quadruple_einstein::families::{instantiate, scan, FamilyId, FamilyParams, ScanBounds, ScanRow};
use quadruple_einstein::products::count_nonnaturally_reductive;
use quadruple_einstein::report::{checks_csv, scan_csv, SolveReport};
use quadruple_einstein::solver::{exception_detect, solve, SolveOptions};
use quadruple_einstein::text::parse_exact;
use quadruple_einstein::verify::{self, Scope};
use quadruple_einstein::{Error, Quadruple, Rational};

/// Einstein metrics g_(x,y) on basic quadruples, in exact arithmetic.
#[derive(Parser)]
#[command(name = "qeinstein", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Instantiate a family row, solve, and report.
    Analyze {
        #[arg(long)]
        family: FamilyId,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Read a quadruple JSON record on stdin, solve, and report.
    SolveRaw {
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Recompute every hard-coded fixture and print a CSV of the comparisons.
    VerifyTables {
        #[arg(long, default_value = "all")]
        scope: Scope,
        /// Alter one expected value, to see the harness fail.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Enumerate family instances; by default only those with a negative
    /// omega or a root collision are printed.
    Scan {
        #[arg(long)]
        max_n: u64,
        #[arg(long)]
        max_k: u64,
        /// Restrict to these rows (repeatable).
        #[arg(long)]
        family: Vec<FamilyId>,
        /// Also scan A4(n1, 2, 2, k) with n1 <= 9m + 1, k <= 2m.
        #[arg(long, default_value_t = 0)]
        a4_m: u64,
        /// Print every instance.
        #[arg(long)]
        all: bool,
    },
    /// Lower bound on the number of non-naturally-reductive Einstein metrics on H^n.
    Count { n: u64 },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    n1: Option<u64>,
    #[arg(long)]
    n2: Option<u64>,
    #[arg(long)]
    n3: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    dim_h: Option<u64>,
    #[arg(long)]
    dim_k: Option<u64>,
    /// h_p for A3, as p/q or a decimal.
    #[arg(long)]
    h_p: Option<String>,
    /// k_p for B2, as p/q or a decimal.
    #[arg(long)]
    k_p: Option<String>,
}

impl ParamArgs {
    fn to_params(&self) -> Result<FamilyParams, Error> {
        let exact = |s: &Option<String>| s.as_deref().map(parse_exact).transpose();
        Ok(FamilyParams {
            n1: self.n1,
            n2: self.n2,
            n3: self.n3,
            k: self.k,
            n: self.n,
            dim_h: self.dim_h,
            h_p: exact(&self.h_p)?,
            dim_k: self.dim_k,
            k_p: exact(&self.k_p)?,
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    /// JSON report (the default).
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Plain-text table.
    #[arg(long)]
    table: bool,
    /// Bound on the certified residuals, as p/q or a decimal.
    #[arg(long, default_value = "1e-12")]
    tol: String,
    /// Bisection budget per certified root.
    #[arg(long, default_value_t = 1_000_000)]
    max_iter: u64,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

enum Failure {
    Verification,
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::RefinementBudget { .. } => 3,
        Error::InternalConsistency(_) => 1,
        _ => 2,
    }
}

fn emit(text: &str) {
    let mut out = io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn report(q: Quadruple, args: &SolveArgs) -> Result<(), Failure> {
    let tol: Rational = parse_exact(&args.tol)?;
    let opts = SolveOptions {
        tol,
        max_iter: args.max_iter,
    };
    let start = Instant::now();
    let sols = solve(&q, &opts)?;
    let exc = exception_detect(&q);
    let mut rep = SolveReport::new(q, exc, opts.tol, &sols);
    if args.timing {
        rep.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    if args.table {
        emit(&rep.to_table());
    } else {
        emit(&rep.to_json());
        emit("\n");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { family, params, solve } => {
            let q = instantiate(family, &params.to_params()?)?;
            report(q, &solve)
        }
        Command::SolveRaw { solve } => {
            let mut input = String::new();
            io::stdin()
                .read_to_string(&mut input)
                .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
            let q = Quadruple::from_json(&input)?;
            report(q, &solve)
        }
        Command::VerifyTables { scope, corrupt } => {
            let rows = verify::run(scope, corrupt)?;
            emit(&checks_csv(&rows));
            if rows.iter().all(|r| r.pass) {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Scan {
            max_n,
            max_k,
            family,
            a4_m,
            all,
        } => {
            if max_n < 2 || max_k < 1 {
                return Err(Error::Parameter(format!(
                    "empty bounds: need --max-n >= 2 and --max-k >= 1, got {max_n} and {max_k}"
                ))
                .into());
            }
            if let Some(id) = family.iter().find(|id| id.needs_user_data()) {
                return Err(Error::Parameter(format!("{id} needs user data and cannot be scanned")).into());
            }
            let bounds = ScanBounds {
                families: (!family.is_empty()).then_some(family),
                a4_subfamily_m: a4_m,
                ..ScanBounds::new(max_n, max_k)
            };
            let rows = scan(&bounds)?;
            let shown: Vec<ScanRow> = rows
                .into_iter()
                .filter(|r| all || r.negative_omega() || r.exceptional())
                .collect();
            emit(&scan_csv(&shown));
            Ok(())
        }
        Command::Count { n } => {
            emit(&format!("{}\n", count_nonnaturally_reductive(n)?));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            eprintln!("qeinstein: verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("qeinstein: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
