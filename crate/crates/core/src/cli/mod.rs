//! The `scalefree` command line.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 on success, 2 on a usage error, 1 when an operation fails.
//! Tables go out as CSV (header row, shortest round-trip decimals) or inside
//! a JSON document `{config, seed, results, version}`.

mod args;
mod commands;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use serde_json::Value;

pub use args::{Band, Cli, Command, FileConfig, Format, Grid, Kind, TaperArg};

use crate::params::Params;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Why a run stopped early.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    /// Bad flags, unreadable config or missing input file (exit 2).
    Usage(String),
    /// An operation rejected its inputs or I/O failed (exit 1).
    Runtime(String),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(format!("i/o error: {e}"))
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_real(*v),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// Shortest decimal that parses back to the same double, in plain notation
/// for moderate magnitudes and scientific notation otherwise.
pub fn format_real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Everything a subcommand produces.
#[derive(Debug, Clone)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Summary fields (small; bulk data lives in `rows`).
    pub results: Value,
    /// Replaces the CSV table in CSV mode.
    pub text: Option<String>,
    pub exit_code: i32,
}

/// Resolved settings of a run, echoed into every JSON summary.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: &'static str,
    pub params: Params,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub options: Value,
}

#[derive(Serialize)]
struct Summary<'a> {
    config: &'a RunConfig,
    seed: u64,
    results: &'a Value,
    version: &'static str,
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            }
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig, Failure> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))
}

/// Parses and runs, writing primary output to `--output` or `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = load_config(&cli.config)?;
    let format = cli.format.or(cfg.format).unwrap_or_default();
    let output = cli.output.clone().or_else(|| cfg.output.clone());
    let summary_path = cli.summary.clone().or_else(|| cfg.summary.clone());

    let (subcommand, params, options, report) = commands::dispatch(&cli.command, &cfg)?;
    let config = RunConfig {
        subcommand,
        params,
        format,
        output: output.clone(),
        summary: summary_path.clone(),
        options,
    };

    let mut file_sink;
    let sink: &mut dyn Write = match &output {
        Some(path) => {
            file_sink =
                BufWriter::new(File::create(path).map_err(|e| {
                    Failure::Runtime(format!("cannot create {}: {e}", path.display()))
                })?);
            &mut file_sink
        }
        None => out,
    };

    match format {
        Format::Csv => match &report.text {
            Some(text) => sink.write_all(text.as_bytes())?,
            None => write_csv(sink, &report)?,
        },
        Format::Json => {
            let mut results = report.results.clone();
            if let Value::Object(map) = &mut results {
                if !report.columns.is_empty() {
                    map.insert(
                        "columns".into(),
                        serde_json::to_value(&report.columns).unwrap(),
                    );
                    map.insert("rows".into(), serde_json::to_value(&report.rows).unwrap());
                }
            }
            write_summary(sink, &config, &results)?;
        }
    }
    sink.flush()?;

    if let Some(path) = &summary_path {
        let mut f = BufWriter::new(
            File::create(path)
                .map_err(|e| Failure::Runtime(format!("cannot create {}: {e}", path.display())))?,
        );
        write_summary(&mut f, &config, &report.results)?;
        f.flush()?;
    }
    Ok(report.exit_code)
}

fn write_csv(sink: &mut dyn Write, report: &Report) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(sink);
    let csv_err = |e: csv::Error| Failure::Runtime(format!("csv write failed: {e}"));
    w.write_record(&report.columns).map_err(csv_err)?;
    for row in &report.rows {
        w.write_record(row.iter().map(Cell::render))
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn write_summary(sink: &mut dyn Write, config: &RunConfig, results: &Value) -> Result<(), Failure> {
    let doc = Summary {
        config,
        seed: config.params.seed,
        results,
        version: VERSION,
    };
    serde_json::to_writer_pretty(&mut *sink, &doc)
        .map_err(|e| Failure::Runtime(format!("json write failed: {e}")))?;
    writeln!(sink)?;
    Ok(())
}
