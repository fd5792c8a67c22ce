//! Text formats: per-run records, summary rows and convergence traces.
//!
//! Floats in the records file use Rust's shortest round-trip representation,
//! so summaries recomputed from a saved records file match the originals
//! bit for bit.

use std::fmt::Write;

use nbde_core::harness::CSV_HEADER;
use nbde_core::{Algorithm, FunctionId, RunRecord};
use thiserror::Error;

pub const RECORDS_HEADER: &str =
    "algorithm,function,dim,seed,best_fitness,final_error,success,evaluations_used";
pub const TRACE_HEADER: &str = "evaluation_index,best_fitness";

#[derive(Debug, Error, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

pub fn records_to_csv(records: &[RunRecord]) -> String {
    let mut out = String::from(RECORDS_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.algorithm,
            r.function,
            r.dimension,
            r.seed,
            r.best_fitness,
            r.final_error,
            r.success,
            r.evaluations_used
        );
    }
    out
}

fn field<T: std::str::FromStr>(line: usize, name: &str, raw: &str) -> Result<T, ParseError> {
    raw.trim()
        .parse()
        .map_err(|_| err(line, format!("invalid {name} `{raw}`")))
}

/// Parse a records file. An empty file yields no records; traces are not
/// stored and come back empty.
pub fn parse_records(text: &str) -> Result<Vec<RunRecord>, ParseError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
    match lines.next() {
        None => return Ok(Vec::new()),
        Some((n, header)) if header.trim() != RECORDS_HEADER => {
            return Err(err(n, "expected records header"));
        }
        Some(_) => {}
    }
    let mut records = Vec::new();
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 8 {
            return Err(err(n, format!("expected 8 fields, found {}", cols.len())));
        }
        let algorithm: Algorithm = cols[0]
            .trim()
            .parse()
            .map_err(|_| err(n, format!("unknown algorithm `{}`", cols[0])))?;
        let function: FunctionId = cols[1]
            .trim()
            .parse()
            .map_err(|_| err(n, format!("unknown function `{}`", cols[1])))?;
        records.push(RunRecord {
            algorithm,
            function,
            dimension: field(n, "dim", cols[2])?,
            seed: field(n, "seed", cols[3])?,
            best_fitness: field(n, "best_fitness", cols[4])?,
            final_error: field(n, "final_error", cols[5])?,
            success: field(n, "success", cols[6])?,
            evaluations_used: field(n, "evaluations_used", cols[7])?,
            best_so_far_trace: Vec::new(),
        });
    }
    Ok(records)
}

/// One parsed line of the summary CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryCsvRow {
    pub function: FunctionId,
    pub dimension: usize,
    pub algorithm: Algorithm,
    pub mean: f64,
    pub std: f64,
    pub sr: f64,
    pub rank: usize,
}

pub fn parse_summary_csv(text: &str) -> Result<Vec<SummaryCsvRow>, ParseError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
    match lines.next() {
        Some((_, header)) if header.trim() == CSV_HEADER => {}
        Some((n, _)) => return Err(err(n, "expected summary header")),
        None => return Err(err(1, "missing summary header")),
    }
    let mut rows = Vec::new();
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 7 {
            return Err(err(n, format!("expected 7 fields, found {}", cols.len())));
        }
        rows.push(SummaryCsvRow {
            function: cols[0]
                .parse()
                .map_err(|_| err(n, format!("unknown function `{}`", cols[0])))?,
            dimension: field(n, "dim", cols[1])?,
            algorithm: cols[2]
                .parse()
                .map_err(|_| err(n, format!("unknown algorithm `{}`", cols[2])))?,
            mean: field(n, "mean", cols[3])?,
            std: field(n, "std", cols[4])?,
            sr: field(n, "sr", cols[5])?,
            rank: field(n, "rank", cols[6])?,
        });
    }
    Ok(rows)
}

pub fn trace_to_csv(record: &RunRecord) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for p in &record.best_so_far_trace {
        let _ = writeln!(out, "{},{}", p.evaluations, p.best_fitness);
    }
    out
}

/// File name for a run's trace: `trace_<alg>_<F>_D<dim>_<seed>.csv`.
pub fn trace_file_name(record: &RunRecord) -> String {
    format!(
        "trace_{}_{}_D{}_{}.csv",
        record.algorithm, record.function, record.dimension, record.seed
    )
}
