use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ellipf_core::audit::{report_to_csv, report_to_json, run_audit, AuditConfig};
use ellipf_core::auxiliary::{kelisky_expansion, radon_expansion};
use ellipf_core::baseline::{cg1, cg2, CgResult, ErrorKind};
use ellipf_core::tables::{check_table, compute_table, rows_to_csv, rows_to_json};
use ellipf_core::{
    expansion_one, expansion_two, reference_f, Enclosure, Error, EvalPoint, Method, Quality,
};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

/// Incomplete elliptic integral F(λ, k) with certified error enclosures.
#[derive(Debug, Parser)]
#[command(name = "ellipf", version)]
struct Cli {
    /// Absolute tolerance for the reference value and quadratures.
    #[arg(long, global = true, value_parser = parse_tol)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one approximation at (λ, k) and compare with the reference.
    Eval(EvalArgs),
    /// Recompute one of the reference tables.
    Table(TableArgs),
    /// Check enclosure soundness over an interior grid of the unit square.
    Audit(AuditArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum EvalMethod {
    SeriesOne,
    SeriesTwo,
    Cg1,
    Cg2,
    Radon,
    Kelisky,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum AuditMethod {
    SeriesOne,
    SeriesTwo,
    Cg1,
    Cg2,
}

impl From<AuditMethod> for Method {
    fn from(m: AuditMethod) -> Self {
        match m {
            AuditMethod::SeriesOne => Method::SeriesOne,
            AuditMethod::SeriesTwo => Method::SeriesTwo,
            AuditMethod::Cg1 => Method::Cg1,
            AuditMethod::Cg2 => Method::Cg2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(allow_negative_numbers = true)]
    lambda: f64,
    #[arg(allow_negative_numbers = true)]
    k: f64,
    /// Method (may also be given with --method).
    #[arg(value_enum, conflicts_with = "method_flag")]
    method: Option<EvalMethod>,
    /// Truncation order (may also be given with --order).
    #[arg(conflicts_with = "order_flag")]
    order: Option<usize>,
    #[arg(long = "method", id = "method_flag", value_enum)]
    method_flag: Option<EvalMethod>,
    #[arg(long = "order", id = "order_flag")]
    order_flag: Option<usize>,
    /// Machine-readable output instead of the plain listing.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    which: u8,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Compare with the published digits; exit 3 on any mismatch.
    #[arg(long)]
    check: bool,
}

#[derive(Debug, Args)]
struct AuditArgs {
    /// Grid spacing in (0, 0.5].
    #[arg(long, default_value_t = 0.1, value_parser = parse_step)]
    step: f64,
    /// Methods to audit (repeatable or comma-separated).
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["series_one", "series_two"])]
    method: Vec<AuditMethod>,
    /// Series truncation orders: `N`, `A..B`, `A..=B` or `A,B,...`.
    #[arg(long, default_value = "1..3", value_parser = parse_orders)]
    order: Orders,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Exit 3 if any enclosure is violated.
    #[arg(long)]
    check: bool,
}

#[derive(Debug, Clone, PartialEq)]
struct Orders(Vec<usize>);

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    Quality::new(t, Quality::default().max_iter())
        .map(|_| t)
        .map_err(|e| e.to_string())
}

fn parse_step(s: &str) -> Result<f64, String> {
    let h: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if h > 0.0 && h <= 0.5 {
        Ok(h)
    } else {
        Err(format!("step {h} outside (0, 0.5]"))
    }
}

fn parse_orders(s: &str) -> Result<Orders, String> {
    let num = |t: &str| -> Result<usize, String> {
        let n: usize = t.trim().parse().map_err(|_| format!("bad order '{t}'"))?;
        if n == 0 {
            Err("orders must be positive".into())
        } else {
            Ok(n)
        }
    };
    let orders = if let Some((a, b)) = s.split_once("..=").or_else(|| s.split_once("..")) {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(format!("empty order range '{s}'"));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    Ok(Orders(orders))
}

/// Outcome of `eval`, printed as a listing or a one-element CSV/JSON table.
#[derive(Debug, Serialize)]
struct EvalRecord {
    method: &'static str,
    order: usize,
    lambda: f64,
    k: f64,
    value: f64,
    err_lo: f64,
    err_hi: f64,
    reference: f64,
    error: f64,
    contained: bool,
}

enum Failure {
    Domain(Error),
    Mismatch(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Converts an asymptotic bracket into bounds on `F − value`.
fn bracket_enclosure(c: CgResult, order: usize) -> Enclosure {
    let (lo, hi) = match c.kind {
        // F − v = θF and F = v/(1 − θ), so F − v = θv/(1 − θ), increasing in θ.
        ErrorKind::Relative => {
            let e = |t: f64| t * c.value / (1.0 - t);
            (e(c.bracket_lo), e(c.bracket_hi))
        }
        ErrorKind::Absolute { sign } if sign > 0 => (c.bracket_lo, c.bracket_hi),
        ErrorKind::Absolute { .. } => (-c.bracket_hi, -c.bracket_lo),
    };
    Enclosure::new(c.value, lo, hi, order)
}

fn eval(args: EvalArgs, q: Quality) -> Result<(), Failure> {
    let method = args
        .method
        .or(args.method_flag)
        .unwrap_or(EvalMethod::SeriesOne);
    let order = args.order.or(args.order_flag).unwrap_or(2);
    let p = EvalPoint::new(args.lambda, args.k)?;
    let (name, e) = match method {
        EvalMethod::SeriesOne => ("series_one", expansion_one(p, order)?),
        EvalMethod::SeriesTwo => ("series_two", expansion_two(p, order, q)?),
        EvalMethod::Radon => ("radon", radon_expansion(p, order)?),
        EvalMethod::Kelisky => ("kelisky", kelisky_expansion(p, order, q)?),
        EvalMethod::Cg1 => ("cg1", bracket_enclosure(cg1(p)?, 1)),
        EvalMethod::Cg2 => ("cg2", bracket_enclosure(cg2(p)?, 2)),
    };
    let reference = reference_f(p, q)?;
    let rec = EvalRecord {
        method: name,
        order: e.order,
        lambda: p.lambda(),
        k: p.k(),
        value: e.value,
        err_lo: e.err_lo,
        err_hi: e.err_hi,
        reference,
        error: reference - e.value,
        contained: e.contains(reference),
    };
    let out = match args.format {
        None => format!(
            "method    {}\norder     {}\nvalue     {}\nerr_lo    {:e}\nerr_hi    {:e}\nreference {}\nerror     {:e}\ncontained {}\n",
            rec.method, rec.order, rec.value, rec.err_lo, rec.err_hi, rec.reference, rec.error, rec.contained
        ),
        Some(Format::Json) => serde_json::to_string_pretty(&[&rec]).expect("plain struct") + "\n",
        Some(Format::Csv) => format!(
            "method,order,lambda,k,value,err_lo,err_hi,reference,error,contained\n{},{},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{}\n",
            rec.method,
            rec.order,
            rec.lambda,
            rec.k,
            rec.value,
            rec.err_lo,
            rec.err_hi,
            rec.reference,
            rec.error,
            rec.contained
        ),
    };
    std::io::stdout().write_all(out.as_bytes())?;
    Ok(())
}

fn table(args: TableArgs, q: Quality) -> Result<(), Failure> {
    let rows = compute_table(args.which, q)?;
    let text = match args.format {
        Format::Csv => rows_to_csv(&rows)?,
        Format::Json => rows_to_json(&rows)? + "\n",
    };
    std::io::stdout().write_all(text.as_bytes())?;
    if !args.check {
        return Ok(());
    }
    let cells = check_table(args.which, &rows)?;
    let mut stderr = std::io::stderr().lock();
    for c in cells.iter().filter(|c| c.erratum) {
        writeln!(
            stderr,
            "note: ({}, {}) {}: printed {} taken as {} (computed {:e})",
            c.lambda, c.k, c.column, c.printed, c.expected, c.computed
        )?;
    }
    let bad: Vec<_> = cells.iter().filter(|c| !c.matches).collect();
    for c in &bad {
        writeln!(
            stderr,
            "mismatch: ({}, {}) {}: expected {}, computed {:e}",
            c.lambda, c.k, c.column, c.expected, c.computed
        )?;
    }
    if bad.is_empty() {
        writeln!(
            stderr,
            "table {}: all {} cells match",
            args.which,
            cells.len()
        )?;
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "table {}: {} of {} cells differ",
            args.which,
            bad.len(),
            cells.len()
        )))
    }
}

fn audit(args: AuditArgs, q: Quality) -> Result<(), Failure> {
    let mut methods: Vec<Method> = Vec::new();
    for m in args.method.into_iter().map(Method::from) {
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    let config = AuditConfig::new(args.step, methods, args.order.0, q)?;
    let report = run_audit(&config)?;
    let text = match args.format {
        Format::Csv => report_to_csv(&report)?,
        Format::Json => report_to_json(&report)? + "\n",
    };
    std::io::stdout().write_all(text.as_bytes())?;
    let v = report.violations();
    eprintln!("audit: {} grid points, {} violations", report.points, v);
    if args.check && v > 0 {
        return Err(Failure::Mismatch(format!("{v} enclosure violations")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let q = match cli.tol {
        Some(t) => Quality::new(t, Quality::default().max_iter()).expect("validated by parser"),
        None => Quality::default(),
    };
    let result = match cli.command {
        Command::Eval(a) => eval(a, q),
        Command::Table(a) => table(a, q),
        Command::Audit(a) => audit(a, q),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
        // A closed pipe is not worth a diagnostic.
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
