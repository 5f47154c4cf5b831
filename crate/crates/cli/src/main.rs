//! `genairy`: evaluate, tabulate and cross-check generalized Airy functions.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genairy::asympt::{self, Side};
use genairy::diffpoly::f_n;
use genairy::grid::{linspace, map_ordered, Execution};
use genairy::solve::{evaluate_with, Choice};
use genairy::{verify, Error, Method, TaylorModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use genairy_cli::output::{num, report_error, write_records, OutputRecord, TableFormat};

const NUMBER_NOTE: &str = "Numbers are printed with 17 significant digits (CSV, text) \
or shortest round-trip form (JSON); both parse back to the exact binary64 value.";

#[derive(Parser)]
#[command(name = "genairy", version, about = "Generalized Airy functions: u^(n) = x u for even n", after_help = NUMBER_NOTE)]
struct Cli {
    /// Evaluate grid points on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the solution at one point.
    #[command(after_help = NUMBER_NOTE)]
    Eval(EvalArgs),
    /// Evaluate on an equally spaced grid, inclusive of both ends.
    #[command(after_help = NUMBER_NOTE)]
    Table(TableArgs),
    /// Print the differential polynomial f_n = (D + y)^(n-1) y.
    FnPoly(FnPolyArgs),
    /// Run the Cole-Hopf, ODE-residual, cross-method and Riccati checks.
    #[command(after_help = NUMBER_NOTE)]
    Verify(VerifyArgs),
    /// Compare the leading-order asymptotic formulas against reference values.
    #[command(after_help = NUMBER_NOTE)]
    AsymptCompare(AsymptArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Series,
    #[value(alias = "quadrature")]
    Quad,
    #[value(alias = "asymptotic")]
    Asympt,
    Auto,
}

impl MethodArg {
    fn choice(self) -> Choice {
        match self {
            MethodArg::Series => Choice::Fixed(Method::Series),
            MethodArg::Quad => Choice::Fixed(Method::Quadrature),
            MethodArg::Asympt => Choice::Fixed(Method::Asymptotic),
            MethodArg::Auto => Choice::Auto,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Equation order (even, 2..=20).
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Requested absolute tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Also evaluate with this method and report agree_ref and rel_dev.
    #[arg(long, value_enum)]
    compare: Option<MethodArg>,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    x_max: f64,
    /// Number of intervals; steps + 1 rows are printed.
    #[arg(long)]
    steps: usize,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyFormat {
    Text,
    Json,
}

#[derive(Args)]
struct FnPolyArgs {
    /// 1..=20.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: PolyFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Even order; 2..=8 for all checks, up to 12 for the Cole-Hopf check alone.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    x_max: f64,
    #[arg(long, default_value_t = 20)]
    steps: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Seed for the random exponential test functions.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random test functions.
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Pos,
    Neg,
}

#[derive(Args)]
struct AsymptArgs {
    /// Equation order is n = 2m.
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum)]
    side: SideArg,
    /// Comparison points, comma separated (default 6,8,10,12 or -4,-6,-8,-10).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Vec<f64>,
}

#[derive(Serialize)]
struct PolyTerm {
    exponents: Vec<u32>,
    coeff: i128,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Table(a) => cmd_table(a, exec),
        Command::FnPoly(a) => cmd_fn_poly(a),
        Command::Verify(a) => cmd_verify(a, exec),
        Command::AsymptCompare(a) => cmd_asympt_compare(a, exec),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Numeric(e)) => ExitCode::from(report_error(&e)),
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error kind=io reason={:?}", e.to_string());
            ExitCode::from(2)
        }
    }
}

enum Failure {
    Numeric(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<u8, Failure>;

fn note_heuristic(r: &genairy::EvalResult, method: MethodArg) {
    if method == MethodArg::Auto && r.method == Method::Asymptotic {
        eprintln!("note: auto fell back to asymptotics; error_estimate is heuristic");
    }
}

fn cmd_eval(a: EvalArgs) -> CmdResult {
    let model = TaylorModel::for_order(a.n)?;
    let r = evaluate_with(&model, a.x, a.method.choice(), a.tol)?;
    note_heuristic(&r, a.method);
    let mut rec = OutputRecord::new(a.n, a.x, &r);
    if let Some(m) = a.compare {
        let reference = evaluate_with(&model, a.x, m.choice(), a.tol)?;
        rec = rec.with_reference(reference.value);
    }
    write_records(&mut io::stdout().lock(), &[rec], a.format)?;
    Ok(0)
}

fn cmd_table(a: TableArgs, exec: Execution) -> CmdResult {
    let model = TaylorModel::for_order(a.n)?;
    let xs = linspace(a.x_min, a.x_max, a.steps)?;
    let results = map_ordered(&xs, exec, |&x| {
        evaluate_with(&model, x, a.method.choice(), a.tol)
    });

    let mut records = Vec::with_capacity(xs.len());
    let mut failure = None;
    for (&x, r) in xs.iter().zip(results) {
        match r {
            Ok(r) => {
                note_heuristic(&r, a.method);
                records.push(OutputRecord::new(a.n, x, &r));
            }
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
    }
    write_records(&mut io::stdout().lock(), &records, a.format)?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(0),
    }
}

fn cmd_fn_poly(a: FnPolyArgs) -> CmdResult {
    let p = f_n(a.n)?;
    let mut out = io::stdout().lock();
    match a.format {
        PolyFormat::Text => writeln!(out, "{p}")?,
        PolyFormat::Json => {
            let terms: Vec<PolyTerm> = p
                .terms()
                .map(|(m, coeff)| PolyTerm {
                    exponents: (0..a.n).map(|i| m.exponent(i)).collect(),
                    coeff,
                })
                .collect();
            let s = serde_json::to_string_pretty(&terms).map_err(io::Error::other)?;
            writeln!(out, "{s}")?;
        }
    }
    Ok(0)
}

/// Coefficients of degree-5 polynomials, uniform in [−1, 1].
fn random_polys(seed: u64, count: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..=5).map(|_| rng.gen_range(-1.0..=1.0)).collect())
        .collect()
}

fn cmd_verify(a: VerifyArgs, exec: Execution) -> CmdResult {
    let xs = linspace(a.x_min, a.x_max, a.steps)?;
    let polys = random_polys(a.seed, a.samples);
    let report = verify::run(a.n, &xs, &polys, a.tol, exec)?;

    let mut out = io::stdout().lock();
    writeln!(
        out,
        "n={} tol={} points={} samples={} seed={}",
        a.n,
        num(a.tol),
        xs.len(),
        a.samples,
        a.seed
    )?;
    for c in &report.categories {
        write!(
            out,
            "{:<16} max_residual={} checked={} skipped={} {}",
            c.name,
            num(c.max_residual),
            c.checked,
            c.skipped,
            c.status
        )?;
        match &c.note {
            Some(note) => writeln!(out, " ({note})")?,
            None => writeln!(out)?,
        }
    }
    let passed = report.passed();
    writeln!(out, "overall {}", if passed { "PASS" } else { "FAIL" })?;
    out.flush()?;
    Ok(if passed { 0 } else { 1 })
}

fn cmd_asympt_compare(a: AsymptArgs, exec: Execution) -> CmdResult {
    let side = match a.side {
        SideArg::Pos => Side::Pos,
        SideArg::Neg => Side::Neg,
    };
    let xs = if a.x.is_empty() {
        side.default_grid()
    } else {
        a.x
    };
    let cmp = asympt::compare(a.m, side, &xs, exec)?;

    let dev_name = match side {
        Side::Pos => "rel_dev",
        Side::Neg => "amplitude_dev",
    };
    let mut out = io::stdout().lock();
    if cmp.passed.is_none() {
        writeln!(
            out,
            "REPORT-ONLY: m >= 2 comparison is informational. On the negative side the \
terms with cos((1+2k)pi/(2m)) > 0 grow exponentially while the integral stays bounded, \
so no agreement is asserted."
        )?;
    }
    writeln!(
        out,
        "m={} n={} side={}",
        cmp.m,
        asympt::order_for(cmp.m),
        side.as_str()
    )?;
    writeln!(out, "x,asymptotic,reference,reference_method,{dev_name}")?;
    for r in &cmp.rows {
        let ref_method = match r.reference.method {
            Method::Asymptotic => "classical-series",
            m => m.as_str(),
        };
        writeln!(
            out,
            "{},{},{},{},{}",
            num(r.x),
            num(r.asymptotic.value),
            num(r.reference.value),
            ref_method,
            num(r.deviation)
        )?;
    }
    match cmp.passed {
        Some(true) => writeln!(out, "PASS")?,
        Some(false) => writeln!(out, "FAIL")?,
        None => writeln!(out, "REPORT-ONLY")?,
    }
    out.flush()?;
    Ok(match cmp.passed {
        Some(false) => 1,
        _ => 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn random_polys_are_seeded() {
        let a = random_polys(7, 3);
        assert_eq!(a, random_polys(7, 3));
        assert_ne!(a, random_polys(8, 3));
        assert!(a.iter().flatten().all(|c| (-1.0..=1.0).contains(c)));
        assert_eq!(a[0].len(), 6);
    }
}
