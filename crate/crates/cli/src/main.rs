//! `fekete` — command-line front end for the verification suites.
//!
//! Every subcommand runs one suite and writes two artifacts under `--out`:
//! `{command}.json` (a single run-report object: parameters, timestamps,
//! seed, findings) and `{command}.csv` (the per-prime or per-sample table
//! behind the findings). Exit codes: 0 when every finding passes, 1 when
//! at least one fails, 2 for usage errors, 3 for numerical failures.
//!
//! Runs are deterministic: randomized suites consume only the recorded
//! seed, parallel reductions are fixed-order, and `--threads` affects
//! speed only. With `SOURCE_DATE_EPOCH` set, reruns with the same
//! parameters and seed are byte-identical.

// Guards written as `!(x > 0.0)` are deliberate: they reject NaN along with
// non-positive values, while the "readable" rewrite `x <= 0.0` silently
// admits NaN. Keep the negated comparisons.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod report;
mod suites;

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::{RunReport, Status};
use suites::{Params, SuiteOutput};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fekete_core::Error),
    #[error("cannot write {}: {1}", .0.display())]
    Io(PathBuf, #[source] std::io::Error),
    #[error("cannot write {}: {1}", .0.display())]
    Csv(PathBuf, #[source] csv::Error),
    #[error("cannot serialize {}: {1}", .0.display())]
    Json(PathBuf, #[source] serde_json::Error),
}

impl CliError {
    /// 2 for argument problems the library rejected, 3 for everything
    /// that failed mid-run (non-convergence, tolerance violations, IO).
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(fekete_core::Error::Domain(_))
            | CliError::Core(fekete_core::Error::SizeGuard(_)) => 2,
            _ => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "fekete",
    version,
    about = "Numerical verification suites for Fekete and Littlewood-class polynomials"
)]
struct Cli {
    /// Directory that receives {command}.json and {command}.csv.
    #[arg(long, global = true, default_value = "reports")]
    out: PathBuf,

    /// Seed for the randomized suites; recorded in every report.
    #[arg(long, global = true, default_value_t = 20_240_817)]
    seed: u64,

    /// Worker threads (0 = library default). Affects speed only, never
    /// results.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sign-resolved evaluations of f_p at the p-th roots of unity.
    Gauss {
        /// Smallest prime of the sweep.
        #[arg(long, default_value_t = 3)]
        pmin: u64,
        /// Largest prime of the sweep.
        #[arg(long, default_value_t = 1009)]
        pmax: u64,
        /// Error tolerance, in units of sqrt(p).
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Mahler-measure routes: exact M_2, quadrature vs root-product M_0.
    Mahler {
        #[arg(long, default_value_t = 3)]
        pmin: u64,
        #[arg(long, default_value_t = 199)]
        pmax: u64,
        /// Relative tolerance for M_2 against sqrt(p-1).
        #[arg(long, default_value_t = 1e-10)]
        tol_m2: f64,
        /// Relative tolerance between the two M_0 routes.
        #[arg(long, default_value_t = 1e-3)]
        tol_cross: f64,
    },
    /// Zeros of the renormalization H_p on [0, 1): counts and sign structure.
    Zeros {
        #[arg(long, default_value_t = 11)]
        pmin: u64,
        #[arg(long, default_value_t = 1009)]
        pmax: u64,
        /// Grid nodes per 1/p period used to bracket zeros.
        #[arg(long, default_value_t = 4)]
        refinement: usize,
        /// Bisection stopping width (in t units).
        #[arg(long, default_value_t = 1e-12)]
        bisect_tol: f64,
    },
    /// Per-arc center values and derivative bounds for one prime.
    Arcs {
        #[arg(long, default_value_t = 101)]
        p: u64,
        /// Center-value threshold, in units of sqrt(p).
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Derivative budget, in units of p^(3/2).
        #[arg(long, default_value_t = 8f64.sqrt())]
        gamma: f64,
        /// Inner-window half-width (must stay below delta/gamma).
        #[arg(long, default_value_t = 0.1)]
        eta: f64,
    },
    /// Large sieve inequality on random instances and derivative chains.
    Sieve {
        /// Number of random trigonometric-polynomial instances.
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        /// Largest prime for the derivative-chain instances.
        #[arg(long, default_value_t = 499)]
        pmax: u64,
    },
    /// The limiting distribution constant c(delta) and its reflection law.
    Cdelta {
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Absolute quadrature tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Empirical midpoint fraction at one prime against c(delta).
    Distribution {
        #[arg(long, default_value_t = 10_007)]
        p: u64,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Quadrature tolerance for the limit constant.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Allowed gap between the empirical fraction and the limit.
        #[arg(long, default_value_t = 0.05)]
        band: f64,
    },
    /// Mean normalized Mahler measure over random Littlewood polynomials.
    Ensemble {
        /// Degree of each sampled polynomial.
        #[arg(long, default_value_t = 32)]
        n: usize,
        /// Measure exponent (0 selects the geometric-mean case).
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Pair-family flatness identity and measure floor.
    Rs {
        /// Largest recursion index (degree 2^n - 1).
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        /// Relative tolerance for the flatness identity.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Build and verify the measure lower-bound certificate for one prime.
    Certify {
        #[arg(long)]
        p: u64,
    },
    /// Certificate sweep over a prime range (the full per-prime report).
    Report {
        #[arg(long, default_value_t = 101)]
        pmin: u64,
        #[arg(long, default_value_t = 499)]
        pmax: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("the thread pool is configured once, before any parallel work");
    }
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Run the suite, write both report files, print the findings. Returns
/// whether any finding failed.
fn run(cli: &Cli) -> Result<bool, CliError> {
    let started = report::timestamp();
    let mut params: Params = BTreeMap::new();
    let (name, output) = dispatch(&cli.command, cli.seed, &mut params)?;
    let ended = report::timestamp();

    let run_report = RunReport {
        command: name.to_string(),
        params,
        started,
        ended,
        seed: cli.seed,
        generator: fekete_core::GENERATOR_ID.to_string(),
        findings: output.findings,
    };

    std::fs::create_dir_all(&cli.out).map_err(|e| CliError::Io(cli.out.clone(), e))?;
    let json_path = report::write_json(&cli.out, &run_report)?;
    let csv_path = report::write_csv(&cli.out, &run_report.command, &output.table)?;

    // The summary is best-effort: a closed stdout (e.g. piped into `head`)
    // must not turn a finished run into a panic — the report files are the
    // real output and are already on disk.
    let stdout = std::io::stdout();
    let mut console = stdout.lock();
    for f in &run_report.findings {
        let _ = writeln!(
            console,
            "{:<20} {:<8} measured={} expected={} tolerance={}",
            f.check_id,
            match f.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Observe => "observe",
            },
            slot(f.measured),
            slot(f.expected),
            slot(f.tolerance),
        );
    }
    let _ = writeln!(console, "wrote {}", json_path.display());
    if let Some(path) = csv_path {
        let _ = writeln!(console, "wrote {}", path.display());
    }
    Ok(run_report.findings.iter().any(|f| f.status == Status::Fail))
}

fn slot(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.6e}"))
}

fn dispatch(
    command: &Command,
    seed: u64,
    params: &mut Params,
) -> Result<(&'static str, SuiteOutput), CliError> {
    let out = match command {
        Command::Gauss { pmin, pmax, tol } => ("gauss", suites::gauss(*pmin, *pmax, *tol, params)?),
        Command::Mahler {
            pmin,
            pmax,
            tol_m2,
            tol_cross,
        } => ("mahler", suites::mahler(*pmin, *pmax, *tol_m2, *tol_cross, params)?),
        Command::Zeros {
            pmin,
            pmax,
            refinement,
            bisect_tol,
        } => ("zeros", suites::zeros(*pmin, *pmax, *refinement, *bisect_tol, params)?),
        Command::Arcs { p, delta, gamma, eta } => {
            ("arcs", suites::arcs(*p, *delta, *gamma, *eta, params)?)
        }
        Command::Sieve { cases, pmax } => ("sieve", suites::sieve(*cases, *pmax, seed, params)?),
        Command::Cdelta { delta, tol } => ("cdelta", suites::cdelta(*delta, *tol, params)?),
        Command::Distribution { p, delta, tol, band } => (
            "distribution",
            suites::distribution(*p, *delta, *tol, *band, params)?,
        ),
        Command::Ensemble { n, q, samples } => {
            ("ensemble", suites::ensemble(*n, *q, *samples, seed, params)?)
        }
        Command::Rs { nmax, tol } => ("rs", suites::rs(*nmax, *tol, params)?),
        Command::Certify { p } => ("certify", suites::certify(*p, params)?),
        Command::Report { pmin, pmax } => ("report", suites::sweep_report(*pmin, *pmax, params)?),
    };
    Ok(out)
}
