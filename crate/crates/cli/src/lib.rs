//! Command-line front end: kernel specs in, CSV or JSON reports out.

use std::fmt;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corrwron::checks::{
    check_completely_monotone, check_density_surrogate, check_fourier_identity, check_jensen_wronskian,
    check_laplace_identity, check_positive_definite, fourier_wronskian_fn, tabulated_laplace_jet, CheckReport,
};
use corrwron::correlate::{build_k2y, CorrelationKernel, Normalization};
use corrwron::kernels::{parse_kernel, WeightKernel};
use corrwron::riemann::{find_xi_zeros, scan_rh_positivity, Verdict};
use corrwron::xform::{fourier_jet, laplace_jet, wronskian};
use corrwron::Error;
use num_complex::Complex64;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "CORRWRON_SEED";

/// A single value `x` or an inclusive grid `lo:hi:step`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.lo == self.hi {
            return vec![self.lo];
        }
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.lo + i as f64 * self.step).collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| format!("`{p}` is not a number"));
        let grid = match parts.as_slice() {
            [x] => {
                let x = num(x)?;
                Grid { lo: x, hi: x, step: 1.0 }
            }
            [lo, hi, step] => Grid { lo: num(lo)?, hi: num(hi)?, step: num(step)? },
            _ => return Err(format!("expected `x` or `lo:hi:step`, got `{s}`")),
        };
        if !(grid.lo.is_finite() && grid.hi.is_finite() && grid.step.is_finite()) {
            return Err("grid values must be finite".into());
        }
        if grid.hi < grid.lo || grid.step <= 0.0 {
            return Err(format!("need lo <= hi and step > 0, got `{s}`"));
        }
        if (grid.hi - grid.lo) / grid.step > 1e7 {
            return Err("grid has more than 10^7 points".into());
        }
        Ok(grid)
    }
}

/// `lo:hi` interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval(pub f64, pub f64);

impl FromStr for Interval {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected `lo:hi`, got `{s}`"))?;
        let a: f64 = a.trim().parse().map_err(|_| format!("`{a}` is not a number"))?;
        let b: f64 = b.trim().parse().map_err(|_| format!("`{b}` is not a number"))?;
        if !(a < b && a.is_finite() && b.is_finite()) {
            return Err(format!("need finite lo < hi, got `{s}`"));
        }
        Ok(Interval(a, b))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

fn kernel_spec(s: &str) -> Result<WeightKernel, String> {
    parse_kernel(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Fourier,
    Laplace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Norm {
    /// `1/n!` times the simplex integral
    Transform,
    /// the raw simplex integral
    Simplex,
}

impl From<Norm> for Normalization {
    fn from(n: Norm) -> Self {
        match n {
            Norm::Transform => Normalization::Transform,
            Norm::Simplex => Normalization::Simplex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// closed form when available, otherwise quadrature
    Auto,
    Closed,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Part {
    Re,
    Im,
}

#[derive(Debug, Parser)]
#[command(name = "corrwron", version, about = "Correlation kernels, transform Wronskians and positivity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write data here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the correlation kernel nu_n of a weight
    Nu {
        /// e.g. gaussian, laguerre:alpha=0.5, tent:cosh=0.3
        #[arg(long, value_parser = kernel_spec)]
        kernel: WeightKernel,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// `t` or `lo:hi:step`
        #[arg(long, allow_hyphen_values = true)]
        t: Grid,
        #[arg(long, default_value_t = 1e-10, value_parser = positive)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Norm::Transform)]
        normalization: Norm,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[command(flatten)]
        output: Output,
    },
    /// Fourier or Laplace transform (or its k-th derivative) of a weight,
    /// or of nu_n when n >= 2
    Transform {
        #[arg(long, value_parser = kernel_spec)]
        kernel: WeightKernel,
        #[arg(long, value_enum, default_value_t = Kind::Fourier)]
        kind: Kind,
        /// `x` or `lo:hi:step`
        #[arg(long, allow_hyphen_values = true)]
        x: Grid,
        /// derivative order
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1e-12, value_parser = positive)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Part::Re)]
        part: Part,
        #[command(flatten)]
        output: Output,
    },
    /// Wronskian W_n of the transform of a weight
    Wronskian {
        #[arg(long, value_parser = kernel_spec)]
        kernel: WeightKernel,
        #[arg(long, value_enum, default_value_t = Kind::Fourier)]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: Grid,
        #[arg(long, default_value_t = 1e-12, value_parser = positive)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Part::Re)]
        part: Part,
        #[command(flatten)]
        output: Output,
    },
    /// Run a verifier and report pass/fail
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Positivity scan of the Fourier transform of Phi_{2,y}
    RhScan {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, default_value_t = 30.0, value_parser = positive)]
        xmax: f64,
        #[arg(long, default_value_t = 0.05, value_parser = positive)]
        step: f64,
        /// values within this band count as unresolved
        #[arg(long, default_value_t = 1e-16, value_parser = positive)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Zeros of Xi on the critical line
    XiZeros {
        #[arg(long, default_value_t = 0.0)]
        lo: f64,
        #[arg(long, default_value_t = 60.0)]
        hi: f64,
        #[arg(long, default_value_t = 1e-10, value_parser = positive)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// W_n(F f) against the signed Fourier transform of nu_n(f)
    FourierIdentity {
        #[arg(long, value_parser = kernel_spec)]
        kernel: WeightKernel,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "0.1:10:0.2")]
        x: Grid,
        #[arg(long, default_value_t = 1e-5, value_parser = positive)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// W_n(L f) against the Laplace transform of nu_n(f)
    LaplaceIdentity {
        #[arg(long, value_parser = kernel_spec)]
        kernel: WeightKernel,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "0.2:5:0.1")]
        x: Grid,
        #[arg(long, default_value_t = 1e-5, value_parser = positive)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Random Gram matrices of the signed Fourier Wronskian
    Psd {
        #[arg(long, value_parser = kernel_spec)]
        kernel: WeightKernel,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// sample points are drawn from `lo:hi`
        #[arg(long, default_value = "-10:10", allow_hyphen_values = true)]
        range: Interval,
        #[arg(long, default_value_t = 1e-8, value_parser = positive)]
        tol: f64,
        /// overridden by CORRWRON_SEED
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Derivative signs of the Laplace transform of a weight (n = 1) or
    /// of nu_n
    Cm {
        #[arg(long, value_parser = kernel_spec)]
        kernel: WeightKernel,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        k_max: usize,
        #[arg(long, default_value = "0.1:5:0.1")]
        x: Grid,
        #[arg(long, default_value_t = 1e-9, value_parser = positive)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Strip Wronskian identity for an even weight at offset y
    Jensen {
        #[arg(long, value_parser = kernel_spec)]
        kernel: WeightKernel,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, default_value = "0:10:0.2", allow_hyphen_values = true)]
        x: Grid,
        #[arg(long, default_value_t = 1e-5, value_parser = positive)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Zero detection for the Fourier transform of cosh(y t) nu_n
    Density {
        #[arg(long, value_parser = kernel_spec)]
        kernel: WeightKernel,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// cosh modulation of nu_n; needs an even kernel when nonzero
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, default_value_t = 15.0, value_parser = positive)]
        xmax: f64,
        #[arg(long, default_value_t = 0.05, value_parser = positive)]
        step: f64,
        #[arg(long, default_value_t = 1e-6, value_parser = positive)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
}

/// A row of tabular output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub x: f64,
    pub value: f64,
    pub error: Option<f64>,
}

/// Something `emit` can write.
pub enum Report<'a> {
    Rows(&'a [Row]),
    Check(&'a CheckReport),
    Json(serde_json::Value),
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::UnknownKernel(_)
            | Error::NoClosedForm { .. }
            | Error::Decay(_)
            | Error::Precondition(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) | CliError::Io(_) => EXIT_NUMERICAL,
        }
    }
}

fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes CSV rows `x,value[,error]` with 17 significant digits.
pub fn write_csv<W: Write>(rows: &[Row], with_error: bool, w: W) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    if with_error {
        out.write_record(["x", "value", "error"])?;
    } else {
        out.write_record(["x", "value"])?;
    }
    for r in rows {
        let mut rec = vec![fmt_num(r.x), fmt_num(r.value)];
        if with_error {
            rec.push(fmt_num(r.error.unwrap_or(0.0)));
        }
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

/// Reads CSV written by [`write_csv`].
pub fn read_csv<R: Read>(r: R) -> Result<Vec<Row>, CliError> {
    let mut rdr = csv::Reader::from_reader(r);
    let with_error = rdr.headers()?.len() == 3;
    let parse = |s: &str| s.parse::<f64>().map_err(|_| CliError::Usage(format!("`{s}` is not a number")));
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let error = if with_error { Some(parse(&rec[2])?) } else { None };
        rows.push(Row { x: parse(&rec[0])?, value: parse(&rec[1])?, error });
    }
    Ok(rows)
}

fn rows_json(rows: &[Row]) -> serde_json::Value {
    serde_json::Value::Array(
        rows.iter()
            .map(|r| match r.error {
                Some(e) => json!({"x": r.x, "value": r.value, "error": e}),
                None => json!({"x": r.x, "value": r.value}),
            })
            .collect(),
    )
}

fn check_rows(report: &CheckReport) -> (Vec<Row>, bool) {
    if report.check == "density" {
        let rows = report.points.iter().map(|p| Row { x: p.x, value: p.lhs.re, error: Some(p.rhs.re) }).collect();
        (rows, true)
    } else {
        (report.points.iter().map(|p| Row { x: p.x, value: p.residual, error: None }).collect(), false)
    }
}

/// Writes `report` to `path` (stdout when `None`).
pub fn emit(report: Report<'_>, format: Format, path: Option<&PathBuf>) -> Result<(), CliError> {
    let mut sink: Box<dyn Write> = match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    match (report, format) {
        (Report::Rows(rows), Format::Csv) => write_csv(rows, rows.iter().any(|r| r.error.is_some()), &mut sink)?,
        (Report::Rows(rows), Format::Json) => writeln!(sink, "{}", serde_json::to_string_pretty(&rows_json(rows)).unwrap())?,
        (Report::Check(c), Format::Csv) => {
            let (rows, with_error) = check_rows(c);
            write_csv(&rows, with_error, &mut sink)?
        }
        (Report::Check(c), Format::Json) => writeln!(sink, "{}", serde_json::to_string_pretty(c).unwrap())?,
        (Report::Json(v), _) => writeln!(sink, "{}", serde_json::to_string_pretty(&v).unwrap())?,
    }
    sink.flush()?;
    Ok(())
}

fn pick(z: Complex64, part: Part) -> f64 {
    match part {
        Part::Re => z.re,
        Part::Im => z.im,
    }
}

/// Seed from `CORRWRON_SEED` when set, else the flag.
pub fn resolve_seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_ENV}=`{s}` is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

fn correlation(k: &WeightKernel, n: usize, tol: f64, method: Method) -> Result<CorrelationKernel, CliError> {
    Ok(match method {
        Method::Auto => CorrelationKernel::best(k, n, tol)?,
        Method::Closed => CorrelationKernel::closed(k, n)?,
        Method::Numeric => CorrelationKernel::numeric(k, n, tol)?,
    })
}

fn summarize(report: &CheckReport, to_stdout: bool) {
    let line = format!(
        "{}: {} (worst {:e}, tolerance {:e})",
        report.check,
        if report.pass { "pass" } else { "fail" },
        report.worst,
        report.tolerance
    );
    if to_stdout {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn finish_check(report: CheckReport, output: &Output) -> Result<i32, CliError> {
    emit(Report::Check(&report), output.format, output.out.as_ref())?;
    if output.format == Format::Csv {
        summarize(&report, output.out.is_some());
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Nu { kernel, n, t, tol, normalization, method, output } => {
            let ck = correlation(&kernel, n, tol, method)?.with_normalization(normalization.into());
            let rows = t
                .points()
                .into_iter()
                .map(|t| Ok(Row { x: t, value: ck.evaluate(t)?, error: None }))
                .collect::<Result<Vec<_>, Error>>()?;
            emit(Report::Rows(&rows), output.format, output.out.as_ref())?;
        }
        Command::Transform { kernel, kind, x, k, n, tol, part, output } => {
            let rows = if n <= 1 {
                x.points()
                    .into_iter()
                    .map(|x| {
                        let jet = match kind {
                            Kind::Fourier => fourier_jet(&kernel, x, k, tol)?,
                            Kind::Laplace => laplace_jet(&kernel, x, k, tol)?,
                        };
                        Ok(Row { x, value: pick(jet.values[k], part), error: Some(jet.errors[k]) })
                    })
                    .collect::<Result<Vec<_>, Error>>()?
            } else {
                if kind == Kind::Fourier && k > 0 {
                    return Err(CliError::Usage("derivatives of the Fourier transform of nu_n are not tabulated; use --k 0".into()));
                }
                let pts = x.points();
                let x_max = pts.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let tab = CorrelationKernel::best(&kernel, n, tol.max(1e-11))?.tabulate(x_max)?;
                pts.into_iter()
                    .map(|x| {
                        let (value, error) = match kind {
                            Kind::Fourier => {
                                let (z, e) = tab.fourier(x);
                                (pick(z, part), e)
                            }
                            Kind::Laplace => tab.laplace_derivative(x, k),
                        };
                        Row { x, value, error: Some(error) }
                    })
                    .collect()
            };
            emit(Report::Rows(&rows), output.format, output.out.as_ref())?;
        }
        Command::Wronskian { kernel, kind, n, x, tol, part, output } => {
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let rows = x
                .points()
                .into_iter()
                .map(|x| {
                    let jet = match kind {
                        Kind::Fourier => fourier_jet(&kernel, x, 2 * n - 2, tol)?,
                        Kind::Laplace => laplace_jet(&kernel, x, 2 * n - 2, tol)?,
                    };
                    Ok(Row { x, value: pick(wronskian(&jet, n)?.value, part), error: None })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            emit(Report::Rows(&rows), output.format, output.out.as_ref())?;
        }
        Command::Verify { check } => return verify(check),
        Command::RhScan { y, xmax, step, tol, output } => {
            let scan = scan_rh_positivity(y, xmax, step, tol)?;
            let summary = format!(
                "verdict: {} (y = {y}, tolerance {tol:e}, min {:e} at x = {}{})",
                scan.verdict,
                scan.min_value,
                scan.min_x,
                if scan.in_theorem_range { "" } else { ", outside the |y| < 1/2 strip" }
            );
            match output.format {
                Format::Csv => {
                    let rows: Vec<Row> = scan
                        .x
                        .iter()
                        .zip(&scan.values)
                        .zip(&scan.errors)
                        .map(|((&x, &value), &e)| Row { x, value, error: Some(e) })
                        .collect();
                    emit(Report::Rows(&rows), Format::Csv, output.out.as_ref())?;
                    if output.out.is_some() {
                        println!("{summary}");
                    } else {
                        eprintln!("{summary}");
                    }
                }
                Format::Json => emit(Report::Json(serde_json::to_value(&scan).unwrap()), Format::Json, output.out.as_ref())?,
            }
            return Ok(if scan.verdict == Verdict::AllPositive { EXIT_OK } else { EXIT_CHECK_FAILED });
        }
        Command::XiZeros { lo, hi, tol, output } => {
            let zeros = find_xi_zeros(lo, hi, tol)?;
            match output.format {
                Format::Csv => {
                    let mut out: Box<dyn Write> = match &output.out {
                        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
                        None => Box::new(io::stdout().lock()),
                    };
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record(["zero"])?;
                    for z in &zeros {
                        w.write_record([fmt_num(*z)])?;
                    }
                    w.flush()?;
                }
                Format::Json => emit(Report::Json(json!({"zeros": zeros})), Format::Json, output.out.as_ref())?,
            }
        }
    }
    Ok(EXIT_OK)
}

fn verify(check: Check) -> Result<i32, CliError> {
    match check {
        Check::FourierIdentity { kernel, n, x, tol, output } => {
            finish_check(check_fourier_identity(&kernel, n, &x.points(), tol), &output)
        }
        Check::LaplaceIdentity { kernel, n, x, tol, output } => {
            finish_check(check_laplace_identity(&kernel, n, &x.points(), tol), &output)
        }
        Check::Psd { kernel, n, samples, range, tol, seed, output } => {
            let seed = resolve_seed(seed)?;
            let report = check_positive_definite(fourier_wronskian_fn(&kernel, n, 1e-12), samples, (range.0, range.1), tol, seed);
            finish_check(report, &output)
        }
        Check::Cm { kernel, n, k_max, x, tol, output } => {
            let label = if n <= 1 { format!("L {}", kernel.spec_string()) } else { format!("L nu_{n}({})", kernel.spec_string()) };
            let report = if n <= 1 {
                check_completely_monotone(&label, |x, k| Ok(laplace_jet(&kernel, x, k, 1e-14)?.real()), k_max, &x.points(), tol)
            } else {
                let tab = CorrelationKernel::best(&kernel, n, 1e-11)?.tabulate(1.0)?;
                check_completely_monotone(&label, tabulated_laplace_jet(&tab), k_max, &x.points(), tol)
            };
            finish_check(report, &output)
        }
        Check::Jensen { kernel, y, x, tol, output } => finish_check(check_jensen_wronskian(&kernel, y, &x.points(), tol), &output),
        Check::Density { kernel, n, y, xmax, step, tol, output } => {
            let ck = if y == 0.0 {
                CorrelationKernel::best(&kernel, n, 1e-11)?
            } else {
                if n != 2 {
                    return Err(CliError::Usage("--y requires --n 2".into()));
                }
                build_k2y(&kernel, y, 1e-11)?
            };
            finish_check(check_density_surrogate(&ck, xmax, step, tol), &output)
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
