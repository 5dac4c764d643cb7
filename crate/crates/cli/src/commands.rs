//! Argument definitions and command dispatch.
//!
//! Exit codes: 0 success, 1 a check or inequality failed, 2 usage or parse
//! error, 3 a mathematical precondition was violated.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use opmeans_core::linalg::{HermitianMatrix, ToleranceConfig};
use opmeans_core::means::{weighted_mean, MeanKind, Weight};
use opmeans_core::scalar::{kyfan_scalar_check, KyFanInequality, ScalarSample};

use crate::matrix_file::{parse_matrices, print_matrices, NamedMatrix};
use crate::report::RunReport;
use crate::suite::{
    default_lambda_grid, run_fuzz, run_verify, FuzzConfig, FuzzTarget, VerifyConfig,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

const DEFAULT_SEED: &str = "1";

#[derive(Debug, Parser)]
#[command(
    name = "opmeans",
    version,
    about = "Weighted operator means and Ky Fan type checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weighted mean of two Hermitian matrices read from matrix files.
    Means(MeansArgs),
    /// Seeded sweep of every identity and inequality check.
    Verify(VerifyArgs),
    /// Search noncommuting pairs for violations of the commutative inequalities.
    Fuzz(FuzzArgs),
    /// Scalar Ky Fan type inequalities for one sample.
    Oracle(OracleArgs),
}

fn parse_weight(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    Weight::new(v).map(|w| w.value()).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct MeansArgs {
    /// arithmetic, geometric or harmonic (a, g, h).
    #[arg(long)]
    pub kind: MeanKind,
    /// Weight in [0, 1].
    #[arg(long, value_parser = parse_weight)]
    pub lambda: f64,
    /// Matrix file for A, or `-` for stdin.
    pub a: String,
    /// Matrix file for B, or `-` for stdin. If both are `-`, stdin holds A then B.
    pub b: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, env = "OPMEANS_SEED", default_value = DEFAULT_SEED)]
    pub seed: u64,
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,8")]
    pub dims: Vec<usize>,
    /// Random instances per dimension, in addition to the fixed edge cases.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Comma-separated weights [default: 0,0.1,...,1].
    #[arg(long, value_delimiter = ',', value_parser = parse_weight)]
    pub lambda_grid: Vec<f64>,
    /// Relative residual tolerance for the identity checks.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Emit the JSON report instead of the text summary.
    #[arg(long)]
    pub json: bool,
    /// Record wall time in the report (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
    /// Failures listed in full; the rest are only counted.
    #[arg(long, default_value_t = 20)]
    pub max_findings: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FuzzTargetArg {
    InvGapNoncomm,
    RatioGapNoncomm,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, value_enum)]
    pub target: FuzzTargetArg,
    #[arg(long, env = "OPMEANS_SEED", default_value = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of samples.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Every n-th sample is a commuting control (0 disables controls).
    #[arg(long, default_value_t = 10)]
    pub control_every: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// ratio_ag, diff_ag, diff_ah, diff_recip, ratio_ah or all.
    #[arg(long, default_value = "all")]
    pub ineq: String,
    /// Comma-separated points in (0, 1/2].
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub xs: Vec<f64>,
    /// Comma-separated weights summing to 1 [default: uniform].
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Vec<f64>,
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let code = match cli.command {
        Command::Means(a) => cmd_means(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Fuzz(a) => cmd_fuzz(&a, out, err),
        Command::Oracle(a) => cmd_oracle(&a, out, err),
    };
    let _ = out.flush();
    code
}

fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn parse_source(label: &str, text: &str, expected: usize) -> Result<Vec<NamedMatrix>, String> {
    let ms = parse_matrices(text).map_err(|e| format!("{label}: {e}"))?;
    if ms.len() != expected {
        return Err(format!(
            "{label}: expected {expected} matrix, found {}",
            ms.len()
        ));
    }
    Ok(ms)
}

fn load_operands(args: &MeansArgs) -> Result<(NamedMatrix, NamedMatrix), String> {
    if args.a == "-" && args.b == "-" {
        let mut ms = parse_source("stdin", &read_source("-")?, 2)?;
        let b = ms.pop().expect("two matrices");
        let a = ms.pop().expect("two matrices");
        return Ok((a, b));
    }
    let a = parse_source(&args.a, &read_source(&args.a)?, 1)?.remove(0);
    let b = parse_source(&args.b, &read_source(&args.b)?, 1)?.remove(0);
    Ok((a, b))
}

/// Symmetrizes, warning when the input was visibly non-Hermitian.
fn hermitian(label: &str, m: NamedMatrix, err: &mut dyn Write) -> Result<HermitianMatrix, String> {
    let h = HermitianMatrix::from_matrix(m.matrix).map_err(|e| format!("{label}: {e}"))?;
    if h.symmetrization_defect() > 1e-12 * h.frobenius_norm().max(1.0) {
        let _ = writeln!(
            err,
            "warning: {label} is not Hermitian (defect {:e}); using its Hermitian part",
            h.symmetrization_defect()
        );
    }
    Ok(h)
}

fn cmd_means(args: &MeansArgs, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let (a, b) = match load_operands(args) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let operands = hermitian("A", a, err).and_then(|a| Ok((a, hermitian("B", b, err)?)));
    let (a, b) = match operands {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let w = Weight::new(args.lambda).expect("validated by the parser");
    match weighted_mean(args.kind, &a, &b, w, &ToleranceConfig::default()) {
        Ok(m) => {
            let _ = write!(
                out,
                "{}",
                print_matrices(&[NamedMatrix::unnamed(m.into_matrix())])
            );
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {} mean: {e}", args.kind);
            EXIT_DOMAIN
        }
    }
}

fn emit(report: &RunReport, output: &OutputArgs, out: &mut dyn Write) -> u8 {
    if output.json {
        let _ = writeln!(out, "{}", report.to_json());
    } else {
        let _ = write!(out, "{}", report.to_text());
    }
    if report.failures() == 0 {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cfg = VerifyConfig {
        seed: args.seed,
        dims: args.dims.clone(),
        trials: args.trials,
        lambda_grid: if args.lambda_grid.is_empty() {
            default_lambda_grid()
        } else {
            args.lambda_grid.clone()
        },
        tol: args.tol,
        max_findings: args.output.max_findings,
        timing: args.output.timing,
    };
    match run_verify(&cfg) {
        Ok(report) => emit(&report, &args.output, out),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_fuzz(args: &FuzzArgs, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let target = match args.target {
        FuzzTargetArg::InvGapNoncomm => FuzzTarget::InvGapNoncomm,
        FuzzTargetArg::RatioGapNoncomm => FuzzTarget::RatioGapNoncomm,
    };
    let Ok(budget) = usize::try_from(args.budget) else {
        let _ = writeln!(err, "error: budget too large");
        return EXIT_USAGE;
    };
    let cfg = FuzzConfig {
        control_every: args.control_every,
        max_findings: args.output.max_findings,
        timing: args.output.timing,
        ..FuzzConfig::new(target, args.seed, budget)
    };
    match run_fuzz(&cfg) {
        Ok(report) => {
            // Violations are findings about open questions, not failures.
            emit(&report, &args.output, out);
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let ineqs: Vec<KyFanInequality> = if args.ineq.eq_ignore_ascii_case("all") {
        KyFanInequality::ALL.to_vec()
    } else {
        match args.ineq.parse() {
            Ok(i) => vec![i],
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        }
    };
    let sample = if args.weights.is_empty() {
        ScalarSample::uniform(args.xs.clone())
    } else {
        ScalarSample::new(args.xs.clone(), args.weights.clone())
    };
    let sample = match sample.and_then(|s| s.require_half_domain().map(|()| s)) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut all_hold = true;
    for ineq in ineqs {
        match kyfan_scalar_check(ineq, &sample) {
            Ok(c) => {
                all_hold &= c.holds;
                let _ = writeln!(
                    out,
                    "{ineq}: lhs={} rhs={} holds={} equality={}",
                    c.lhs, c.rhs, c.holds, c.equality
                );
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        }
    }
    if all_hold {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
