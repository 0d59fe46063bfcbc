//! The `addtrans` command line.
//!
//! Exit codes: 0 success, 1 an asserted identity failed (or evaluation
//! failed), 2 usage error, 3 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::dirichlet::{convolve_table, ValueTable};
use crate::error::Error;
use crate::factor::{factorize, factorize_u64};
use crate::function::{ArithFn, CATALOG_NAMES};
use crate::identities::{run_suite, IdentityId, SuiteReport, Verdict};
use crate::registry::{resolve, PREFIXES};
use crate::table_io::{Row, TableDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Tables whose upper end is at most this are evaluated through a sieve.
pub const SIEVE_TABLE_CAP: u64 = 10_000_000;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "ADDTRANS_THREADS";

#[derive(Debug, Parser)]
#[command(name = "addtrans", version, about = "Additive transforms, Dirichlet convolution, and exact identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print f(n) exactly.
    Eval {
        #[arg(long = "f")]
        f: String,
        #[arg(long = "n")]
        n: BigUint,
    },
    /// Tabulate f over a range.
    Table {
        #[arg(long = "f")]
        f: String,
        #[arg(long, value_parser = parse_range)]
        range: (u64, u64),
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate the Dirichlet convolution f*g over a range.
    Convolve {
        #[arg(long = "f")]
        f: String,
        #[arg(long = "g")]
        g: String,
        #[arg(long, value_parser = parse_range)]
        range: (u64, u64),
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check identities over [1, N].
    Verify {
        /// Identity ids; repeat or comma-separate.
        #[arg(long = "id", value_delimiter = ',')]
        ids: Vec<String>,
        /// Function specs; defaults to the whole catalog.
        #[arg(long = "f", value_delimiter = ',')]
        f: Vec<String>,
        /// Second functions for two-function identities; defaults to --f.
        #[arg(long = "g", value_delimiter = ',')]
        g: Vec<String>,
        #[arg(long = "N", default_value_t = 10_000)]
        n_max: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List catalog functions, constructors, and identity ids.
    List,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Parses `lo..hi` or `lo..=hi`, both inclusive, with `1 <= lo <= hi`.
pub fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u64 = lo.trim().parse().map_err(|e| format!("bad lower end {lo:?}: {e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("bad upper end {hi:?}: {e}"))?;
    if lo == 0 || lo > hi {
        return Err(format!("range needs 1 <= lo <= hi, got {lo}..{hi}"));
    }
    Ok((lo, hi))
}

enum Failure {
    Usage(String),
    Io(String),
    Eval(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownFunction(_) | Error::UnknownIdentity(_) | Error::Parse(_) | Error::Domain(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Eval(e.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// normal output to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_IO
        }
        Err(Failure::Eval(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILED
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Eval { f, n } => {
            let f = resolve(&f)?;
            let value = f.eval(&factorize(&n)?)?;
            emit(&format!("{value}\n"), None, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Table { f, range: (lo, hi), output } => {
            let f = resolve(&f)?;
            let doc = tabulate(&f, lo, hi)?;
            emit(&render_table(&doc, output.format)?, output.out.as_ref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Convolve { f, g, range: (lo, hi), output } => {
            let (f, g) = (resolve(&f)?, resolve(&g)?);
            let table = convolve_table(&f, &g, hi)?;
            let doc = TableDoc::from_table(&table, lo, hi);
            emit(&render_table(&doc, output.format)?, output.out.as_ref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Verify { ids, f, g, n_max, output } => {
            let ids = ids.iter().map(|s| s.parse::<IdentityId>()).collect::<Result<Vec<_>, _>>()?;
            let functions = if f.is_empty() {
                CATALOG_NAMES.iter().map(|name| resolve(name)).collect::<Result<Vec<_>, _>>()?
            } else {
                f.iter().map(|s| resolve(s)).collect::<Result<Vec<_>, _>>()?
            };
            let seconds = g.iter().map(|s| resolve(s)).collect::<Result<Vec<_>, _>>()?;
            let second = (!seconds.is_empty()).then_some(seconds.as_slice());
            let suite = run_suite(&ids, &functions, second, n_max)?;
            emit(&render_suite(&suite, output.format)?, output.out.as_ref(), stdout)?;
            Ok(suite_exit_code(&suite))
        }
        Command::List => {
            let mut out = String::from("functions:\n");
            for name in CATALOG_NAMES {
                let f = resolve(name)?;
                out.push_str(&format!("  {:<10} {}\n", name, f.class()));
            }
            out.push_str(&format!("constructors: {}\n", PREFIXES.join(" ")));
            out.push_str("identities:\n");
            for id in IdentityId::ALL {
                out.push_str(&format!("  {:<30} {}\n", id.as_str(), id.description()));
            }
            emit(&out, None, stdout)?;
            Ok(EXIT_OK)
        }
    }
}

fn tabulate(f: &ArithFn, lo: u64, hi: u64) -> Result<TableDoc, Failure> {
    if hi <= SIEVE_TABLE_CAP {
        let table = ValueTable::tabulate(f, hi)?;
        return Ok(TableDoc::from_table(&table, lo, hi));
    }
    let rows =
        (lo..=hi).map(|n| Ok(Row { n, value: f.eval(&factorize_u64(n)?)? })).collect::<Result<Vec<_>, Error>>()?;
    Ok(TableDoc { provenance: f.name().to_string(), rows })
}

fn render_table(doc: &TableDoc, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Text => doc.to_text(),
        Format::Csv => doc.to_csv()?,
        Format::Json => doc.to_json()?,
    })
}

/// 1 when an asserted identity has a counterexample, else 0. Erratum
/// candidates and inapplicable reports do not fail a run.
pub fn suite_exit_code(suite: &SuiteReport) -> i32 {
    if suite.has_failures() {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}

/// Text or JSON rendering of a suite; CSV renders one row per report.
pub fn render_suite(suite: &SuiteReport, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(suite).map_err(|e| Error::Parse(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            let err = |e: csv::Error| Error::Parse(e.to_string());
            w.write_record(["id", "function", "range", "status", "detail"]).map_err(err)?;
            for r in &suite.reports {
                let fields =
                    [r.id.to_string(), r.function.clone(), r.range.to_string(), r.verdict().to_string(), r.detail()];
                w.write_record(&fields).map_err(err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
        }
        Format::Text => Ok(suite_text(suite)),
    }
}

fn suite_text(suite: &SuiteReport) -> String {
    let header = ["id", "function", "range", "status", "detail"];
    let rows: Vec<[String; 5]> = suite
        .reports
        .iter()
        .map(|r| [r.id.to_string(), r.function.clone(), r.range.to_string(), r.verdict().to_string(), r.detail()])
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: [&str; 5]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i == 4 {
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.push_str(&" ".repeat(w - cell.chars().count() + 2));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for row in &rows {
        out.push_str(&line([&row[0], &row[1], &row[2], &row[3], &row[4]]));
    }
    out.push_str(&format!(
        "{} pass, {} fail, {} erratum-candidate, {} inapplicable\n",
        suite.count(Verdict::Pass),
        suite.count(Verdict::Fail),
        suite.count(Verdict::ErratumCandidate),
        suite.count(Verdict::Inapplicable)
    ));
    out
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

/// Caps the global worker pool from [`THREADS_ENV`] when it is set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| format!("{THREADS_ENV}={raw:?} is not a count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())
}
