//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 I/O error,
//! 3 verification failure.

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::dft::DEFAULT_ZERO_TOL;
use crate::dim::{DftDimension, GridVector};
use crate::eigenbasis::EigenBasis;
use crate::frft::FrftOperator;
use crate::hermite::{convergence_report, crossing_check, HermiteEvaluator};
use crate::verify::run_verification;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dft-hermite",
    version,
    about = "Hermite-type eigenbasis of the centered DFT and fractional transforms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Export the orthonormal eigenbasis phi_0..phi_{N-1}
    Basis(BasisArgs),
    /// Run the invariant suite and write a JSON report
    Verify(VerifyArgs),
    /// Tabulate the distance between phi_n and sampled Hermite functions
    Converge(ConvergeArgs),
    /// Apply the fractional DFT of order alpha to a signal
    Frft(FrftArgs),
    /// Count sign changes of every phi_n
    Crossings(CrossingsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[arg(long = "n-dim")]
    pub n_dim: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "n-dim")]
    pub n_dim: usize,
    #[arg(long, default_value_t = 1e-9, value_parser = positive_f64)]
    pub tolerance: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    /// Dimensions, e.g. `41,101,401`
    #[arg(long, value_parser = parse_list, default_value = "41,401")]
    pub dims: IndexList,
    /// Orders, e.g. `0..7` or `0,2,5-9` (ranges inclusive)
    #[arg(long, value_parser = parse_list, default_value = "0..7")]
    pub orders: IndexList,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FrftArgs {
    #[arg(long = "n-dim")]
    pub n_dim: usize,
    #[arg(long, allow_hyphen_values = true, value_parser = finite_f64)]
    pub alpha: f64,
    /// CSV with header `k,re[,im]` and exactly N rows
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CrossingsArgs {
    #[arg(long = "n-dim")]
    pub n_dim: usize,
    /// Entries with |phi(k)| <= tolerance * max|phi| count as zero
    #[arg(long, default_value_t = DEFAULT_ZERO_TOL, value_parser = non_negative_f64)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

fn finite_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{s} is not finite"))
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let x = finite_f64(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("{s} must be > 0"))
    }
}

fn non_negative_f64(s: &str) -> Result<f64, String> {
    let x = finite_f64(s)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("{s} must be >= 0"))
    }
}

/// A parsed `--dims`/`--orders` value.
pub type IndexList = Vec<usize>;

/// Comma-separated integers and inclusive ranges `a..b`, `a..=b` or `a-b`.
pub fn parse_list(s: &str) -> Result<IndexList, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let range = part
            .split_once("..=")
            .or_else(|| part.split_once(".."))
            .or_else(|| part.split_once('-'));
        match range {
            Some((a, b)) => {
                let a: usize = a
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad range start in '{part}'"))?;
                let b: usize = b
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad range end in '{part}'"))?;
                if a > b {
                    return Err(format!("empty range '{part}'"));
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| format!("bad integer '{part}'"))?),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<crate::error::Error> for CliError {
    fn from(e: crate::error::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn dimension(n: usize) -> Result<DftDimension, CliError> {
    Ok(DftDimension::new(n)?)
}

fn write_output(out: &Output, content: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &out.out {
        Some(path) => {
            let mut f =
                File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            f.write_all(content.as_bytes())
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => stdout
            .write_all(content.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{e}");
            return EXIT_USAGE;
        }
        Err(e) => {
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}

pub fn execute(
    cmd: &Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match cmd {
        Command::Basis(a) => cmd_basis(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Converge(a) => cmd_converge(a, stdout, stderr),
        Command::Frft(a) => cmd_frft(a, stdout),
        Command::Crossings(a) => cmd_crossings(a, stdout),
    }
}

#[derive(Serialize)]
struct BasisJson<'a> {
    #[serde(rename = "N")]
    n: usize,
    epsilon: f64,
    eigenvalue_exponents: Vec<u8>,
    phi: Vec<&'a [f64]>,
}

/// `k,phi_0,...,phi_{N-1}` with one row per `k` and 17 significant digits.
pub fn basis_csv(basis: &EigenBasis) -> String {
    let dim = basis.dim();
    let mut s = String::from("k");
    for n in 0..basis.len() {
        s.push_str(&format!(",phi_{n}"));
    }
    s.push('\n');
    for k in dim.indices() {
        s.push_str(&k.to_string());
        for phi in basis.vectors() {
            s.push_str(&format!(",{:.16e}", phi[k]));
        }
        s.push('\n');
    }
    s
}

pub fn basis_json(basis: &EigenBasis) -> String {
    let doc = BasisJson {
        n: basis.dim().size(),
        epsilon: basis.dim().epsilon(),
        eigenvalue_exponents: basis.exponents(),
        phi: basis.vectors().iter().map(|v| v.values()).collect(),
    };
    serde_json::to_string(&doc).expect("basis serialises")
}

fn cmd_basis(a: &BasisArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let basis = EigenBasis::build(dimension(a.n_dim)?)?;
    let text = match a.format {
        Format::Csv => basis_csv(&basis),
        Format::Json => basis_json(&basis),
    };
    write_output(&a.output, &text, stdout)
}

fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let report = run_verification(dimension(a.n_dim)?, a.tolerance)?;
    let mut text = report.to_json();
    text.push('\n');
    write_output(&a.output, &text, stdout)?;
    if report.all_pass() {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|(_, c)| !c.pass)
            .map(|(k, _)| k.as_str())
            .collect();
        Err(CliError::Verification(failed.join(", ")))
    }
}

#[derive(Serialize)]
struct ConvergeRow {
    #[serde(rename = "N")]
    n_dim: usize,
    n: usize,
    sup_error: f64,
    argmax_k: i64,
}

fn cmd_converge(
    a: &ConvergeArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let dims = a
        .dims
        .iter()
        .map(|&n| dimension(n))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    for dim in dims {
        let orders: Vec<usize> = a
            .orders
            .iter()
            .copied()
            .filter(|&n| {
                let keep = n < dim.size();
                if !keep {
                    let _ = writeln!(
                        stderr,
                        "warning: skipping order {n} (needs n < N = {})",
                        dim.size()
                    );
                }
                keep
            })
            .collect();
        let Some(&top) = orders.iter().max() else {
            continue;
        };
        let basis = EigenBasis::build(dim)?;
        let evaluator = HermiteEvaluator::new(top)?;
        for n in orders {
            let r = convergence_report(&basis, &evaluator, n)?;
            rows.push(ConvergeRow {
                n_dim: r.n_dim,
                n: r.order,
                sup_error: r.sup_error,
                argmax_k: r.argmax_k,
            });
        }
    }
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("N,n,sup_error,argmax_k\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{:.16e},{}\n",
                    r.n_dim, r.n, r.sup_error, r.argmax_k
                ));
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialise"),
    };
    write_output(&a.output, &text, stdout)
}

/// Reads `k,re[,im]` rows; every `k` of `I_N` must appear exactly once.
pub fn read_signal(path: &Path, dim: DftDimension) -> Result<GridVector<Complex64>, CliError> {
    let file = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let mut values = vec![None; dim.size()];
    let mut rows = 0;
    for record in reader.records() {
        let record = record.map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => CliError::Io(e.to_string()),
            _ => CliError::Usage(format!("{}: {e}", path.display())),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        rows += 1;
        if record.len() < 2 || record.len() > 3 {
            return Err(CliError::Usage(format!(
                "line {line}: expected 2 or 3 columns, found {}",
                record.len()
            )));
        }
        let k: i64 = record[0]
            .parse()
            .map_err(|_| CliError::Usage(format!("line {line}: bad index '{}'", &record[0])))?;
        let num = |field: &str| -> Result<f64, CliError> {
            field
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Usage(format!("line {line}: malformed number '{field}'")))
        };
        let re = num(&record[1])?;
        let im = if record.len() == 3 {
            num(&record[2])?
        } else {
            0.0
        };
        if !dim.contains(k) {
            return Err(CliError::Usage(format!(
                "line {line}: index {k} outside {}..={}",
                dim.first(),
                dim.last()
            )));
        }
        let slot = &mut values[dim.position(k)];
        if slot.is_some() {
            return Err(CliError::Usage(format!("line {line}: index {k} repeated")));
        }
        *slot = Some(Complex64::new(re, im));
    }
    if rows != dim.size() {
        return Err(CliError::Usage(format!(
            "{}: expected {} rows, found {rows}",
            path.display(),
            dim.size()
        )));
    }
    let values = values
        .into_iter()
        .map(|v| v.expect("all rows present"))
        .collect();
    Ok(GridVector::from_values(dim, values)?)
}

fn cmd_frft(a: &FrftArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let dim = dimension(a.n_dim)?;
    let signal = read_signal(&a.input, dim)?;
    let op = FrftOperator::build(&EigenBasis::build(dim)?, a.alpha)?;
    let out = op.apply(&signal)?;
    let mut s = String::from("k,re,im\n");
    for (k, z) in out.iter() {
        s.push_str(&format!("{k},{:.16e},{:.16e}\n", z.re, z.im));
    }
    write_output(&a.output, &s, stdout)
}

#[derive(Serialize)]
struct CrossingRow {
    n: usize,
    crossings: usize,
    matches: bool,
}

fn cmd_crossings(a: &CrossingsArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let basis = EigenBasis::build(dimension(a.n_dim)?)?;
    let rows: Vec<CrossingRow> = crossing_check(&basis, a.tolerance)
        .into_iter()
        .map(|c| CrossingRow {
            n: c.n,
            crossings: c.crossings,
            matches: c.matches(),
        })
        .collect();
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("n,crossings,matches\n");
            for r in &rows {
                s.push_str(&format!("{},{},{}\n", r.n, r.crossings, r.matches));
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialise"),
    };
    write_output(&a.output, &text, stdout)
}

/// Entry point for the binary.
pub fn main_exit_code() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
