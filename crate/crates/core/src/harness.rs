//! Experiment plans, per-cell seeding, success rates, competition ranking
//! and the mean/std/SR summary tables.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::str::FromStr;

use crate::baselines::{run_baseline, BaselineAlgorithm, BaselineConfig};
use crate::benchmarks::{FunctionId, ObjectiveSpec};
use crate::engine::RunRecord;
use crate::error::{Error, Result};
use crate::nbde::{self, CrossoverMix, NbdeConfig, BUDGET_PER_DIM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Nbde,
    DeRand1,
    DeBest2,
    Wsa,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Nbde,
        Algorithm::DeRand1,
        Algorithm::DeBest2,
        Algorithm::Wsa,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Nbde => "nbde",
            Algorithm::DeRand1 => "de_rand_1",
            Algorithm::DeBest2 => "de_best_2",
            Algorithm::Wsa => "wsa",
        }
    }

    pub fn baseline(self) -> Option<BaselineAlgorithm> {
        match self {
            Algorithm::Nbde => None,
            Algorithm::DeRand1 => Some(BaselineAlgorithm::DeRand1),
            Algorithm::DeBest2 => Some(BaselineAlgorithm::DeBest2),
            Algorithm::Wsa => Some(BaselineAlgorithm::Wsa),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or(Error::InvalidConfig(
                "unknown algorithm (expected nbde, de_rand_1, de_best_2 or wsa)",
            ))
    }
}

/// A fully resolved optimizer configuration for one dimension.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmConfig {
    Nbde(NbdeConfig),
    Baseline(BaselineConfig),
}

impl AlgorithmConfig {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            AlgorithmConfig::Nbde(_) => Algorithm::Nbde,
            AlgorithmConfig::Baseline(c) => c.algorithm.algorithm(),
        }
    }

    pub fn np(&self) -> usize {
        match self {
            AlgorithmConfig::Nbde(c) => c.np,
            AlgorithmConfig::Baseline(c) => c.np,
        }
    }

    pub fn max_evaluations(&self) -> u64 {
        match self {
            AlgorithmConfig::Nbde(c) => c.max_evaluations,
            AlgorithmConfig::Baseline(c) => c.max_evaluations,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AlgorithmConfig::Nbde(c) => c.validate(),
            AlgorithmConfig::Baseline(c) => c.validate(),
        }
    }

    pub fn run(&self, spec: &ObjectiveSpec, seed: u64) -> Result<RunRecord> {
        match self {
            AlgorithmConfig::Nbde(c) => nbde::run(c, spec, seed),
            AlgorithmConfig::Baseline(c) => run_baseline(c, spec, seed),
        }
    }
}

impl fmt::Display for AlgorithmConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgorithmConfig::Nbde(c) => write!(
                f,
                "nbde np={} cr=[{}, {}] mix={},{},{} budget={}",
                c.np,
                c.cr_low,
                c.cr_high,
                c.crossover_mix.binary,
                c.crossover_mix.exponential,
                c.crossover_mix.none,
                c.max_evaluations
            ),
            AlgorithmConfig::Baseline(c) if c.algorithm == BaselineAlgorithm::Wsa => {
                write!(f, "wsa np={} budget={}", c.np, c.max_evaluations)
            }
            AlgorithmConfig::Baseline(c) => write!(
                f,
                "{} np={} f={} cr={} budget={}",
                c.algorithm, c.np, c.f, c.cr, c.max_evaluations
            ),
        }
    }
}

/// An algorithm plus optional parameter overrides; resolved per dimension.
/// Overrides that do not apply to the algorithm are ignored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AlgorithmSetup {
    pub algorithm: Option<Algorithm>,
    pub np: Option<usize>,
    pub cr_low: Option<f64>,
    pub cr_high: Option<f64>,
    pub mix: Option<CrossoverMix>,
    pub f: Option<f64>,
    pub cr: Option<f64>,
}

impl AlgorithmSetup {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm: Some(algorithm),
            ..Self::default()
        }
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm.unwrap_or(Algorithm::Nbde)
    }

    pub fn resolve(&self, dim: usize, max_evaluations: u64) -> AlgorithmConfig {
        match self.algorithm().baseline() {
            None => {
                let mut c = NbdeConfig::for_dimension(dim);
                c.max_evaluations = max_evaluations;
                c.np = self.np.unwrap_or(c.np);
                c.cr_low = self.cr_low.unwrap_or(c.cr_low);
                c.cr_high = self.cr_high.unwrap_or(c.cr_high);
                c.crossover_mix = self.mix.unwrap_or(c.crossover_mix);
                AlgorithmConfig::Nbde(c)
            }
            Some(b) => {
                let mut c = BaselineConfig::for_dimension(b, dim);
                c.max_evaluations = max_evaluations;
                c.np = self.np.unwrap_or(c.np);
                c.f = self.f.unwrap_or(c.f);
                c.cr = self.cr.unwrap_or(c.cr);
                AlgorithmConfig::Baseline(c)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub algorithms: Vec<AlgorithmSetup>,
    pub functions: Vec<FunctionId>,
    pub dimensions: Vec<usize>,
    pub runs_per_cell: usize,
    /// Budget per run is `budget_multiplier · D`.
    pub budget_multiplier: u64,
    pub base_seed: u64,
    pub vtr_override: Option<f64>,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::ALL.into_iter().map(AlgorithmSetup::new).collect(),
            functions: FunctionId::ALL.to_vec(),
            dimensions: alloc::vec![10, 30, 50],
            runs_per_cell: 50,
            budget_multiplier: BUDGET_PER_DIM,
            base_seed: 0,
            vtr_override: None,
        }
    }
}

/// One independent run inside a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub dimension: usize,
    pub function: FunctionId,
    /// Index into [`ExperimentPlan::algorithms`].
    pub algorithm: usize,
    pub run: usize,
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() || self.functions.is_empty() || self.dimensions.is_empty() {
            return Err(Error::InvalidConfig("plan needs algorithms, functions and dimensions"));
        }
        if self.runs_per_cell == 0 || self.budget_multiplier == 0 {
            return Err(Error::InvalidConfig("runs and budget multiplier must be positive"));
        }
        let mut tags: Vec<Algorithm> = self.algorithms.iter().map(AlgorithmSetup::algorithm).collect();
        tags.sort();
        tags.dedup();
        if tags.len() != self.algorithms.len() {
            return Err(Error::InvalidConfig("each algorithm may appear once per plan"));
        }
        if let Some(v) = self.vtr_override {
            if !(v > 0.0) {
                return Err(Error::InvalidConfig("value-to-reach must be positive"));
            }
        }
        Ok(())
    }

    /// Every run of the plan, ordered by dimension, function, algorithm, run.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &dimension in &self.dimensions {
            for &function in &self.functions {
                for algorithm in 0..self.algorithms.len() {
                    for run in 0..self.runs_per_cell {
                        cells.push(Cell {
                            dimension,
                            function,
                            algorithm,
                            run,
                        });
                    }
                }
            }
        }
        cells
    }

    pub fn spec(&self, function: FunctionId, dimension: usize) -> Result<ObjectiveSpec> {
        let spec = ObjectiveSpec::new(function, dimension)?;
        match self.vtr_override {
            Some(v) => spec.with_vtr(v),
            None => Ok(spec),
        }
    }

    pub fn config(&self, cell: &Cell) -> AlgorithmConfig {
        self.algorithms[cell.algorithm].resolve(cell.dimension, self.budget_multiplier * cell.dimension as u64)
    }

    pub fn seed(&self, cell: &Cell) -> u64 {
        cell_seed(
            self.base_seed,
            self.algorithms[cell.algorithm].algorithm(),
            cell.function,
            cell.dimension,
            cell.run,
        )
    }

    pub fn run_cell(&self, cell: &Cell) -> Result<RunRecord> {
        let spec = self.spec(cell.function, cell.dimension)?;
        self.config(cell).run(&spec, self.seed(cell))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Stable seed for one run, independent of scheduling order.
pub fn cell_seed(base: u64, algorithm: Algorithm, function: FunctionId, dimension: usize, run: usize) -> u64 {
    [
        fnv1a(algorithm.tag()),
        u64::from(function.number()),
        dimension as u64,
        run as u64,
    ]
    .into_iter()
    .fold(splitmix64(base), |h, v| splitmix64(h ^ splitmix64(v)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub cell: Cell,
    pub error: Error,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentOutcome {
    pub records: Vec<RunRecord>,
    pub failures: Vec<CellFailure>,
}

impl ExperimentOutcome {
    /// Collect per-cell results in cell order.
    pub fn from_results(results: impl IntoIterator<Item = (Cell, Result<RunRecord>)>) -> Self {
        let mut out = Self::default();
        for (cell, result) in results {
            match result {
                Ok(r) => out.records.push(r),
                Err(error) => out.failures.push(CellFailure { cell, error }),
            }
        }
        out
    }
}

/// Run every cell sequentially. Invalid cells are reported, the rest proceed.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentOutcome> {
    plan.validate()?;
    Ok(ExperimentOutcome::from_results(
        plan.cells().into_iter().map(|c| (c, plan.run_cell(&c))),
    ))
}

/// Fraction of successful runs.
pub fn success_rate(records: &[RunRecord]) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::EmptyCell);
    }
    let hits = records.iter().filter(|r| r.success).count();
    Ok(hits as f64 / records.len() as f64)
}

/// Competition ranking on descending score: rank is one plus the number of
/// entries with a strictly greater score. Input order is preserved.
pub fn competition_rank<T: Clone>(scores: &[(T, f64)]) -> Vec<(T, usize)> {
    scores
        .iter()
        .map(|(label, s)| {
            let better = scores.iter().filter(|(_, o)| o > s).count();
            (label.clone(), better + 1)
        })
        .collect()
}

/// Arithmetic mean and population (divide-by-N) standard deviation.
/// Constant samples give exactly `(c, 0)`.
pub fn mean_std(values: &[f64]) -> Result<(f64, f64)> {
    let first = *values.first().ok_or(Error::EmptyCell)?;
    let n = values.len() as f64;
    let mean = first + values.iter().map(|v| v - first).sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok((mean, libm::sqrt(var)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub function: FunctionId,
    pub dimension: usize,
    pub algorithm: Algorithm,
    pub runs: usize,
    /// Mean of raw best fitness (not error).
    pub mean: f64,
    pub std: f64,
    pub sr: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TotalRank {
    pub dimension: usize,
    pub algorithm: Algorithm,
    pub total: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SummaryTable {
    /// Column order: first appearance in the records.
    pub algorithms: Vec<Algorithm>,
    pub functions: Vec<FunctionId>,
    pub dimensions: Vec<usize>,
    /// Ordered by dimension, function, then algorithm column.
    pub rows: Vec<SummaryRow>,
    pub totals: Vec<TotalRank>,
    /// Grid cells with no records.
    pub gaps: Vec<(FunctionId, usize, Algorithm)>,
}

impl SummaryTable {
    pub fn row(&self, function: FunctionId, dimension: usize, algorithm: Algorithm) -> Option<&SummaryRow> {
        self.rows
            .iter()
            .find(|r| r.function == function && r.dimension == dimension && r.algorithm == algorithm)
    }

    pub fn total(&self, dimension: usize, algorithm: Algorithm) -> Option<usize> {
        self.totals
            .iter()
            .find(|t| t.dimension == dimension && t.algorithm == algorithm)
            .map(|t| t.total)
    }
}

/// Per-cell mean/std/SR, per-function competition ranks and per-dimension
/// total ranks. Cells of the function × dimension × algorithm grid without
/// records are listed in `gaps`.
pub fn summarize(records: &[RunRecord]) -> SummaryTable {
    let mut algorithms: Vec<Algorithm> = Vec::new();
    let mut groups: BTreeMap<(usize, FunctionId, Algorithm), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        if !algorithms.contains(&r.algorithm) {
            algorithms.push(r.algorithm);
        }
        groups.entry((r.dimension, r.function, r.algorithm)).or_default().push(r);
    }
    let mut functions: Vec<FunctionId> = records.iter().map(|r| r.function).collect();
    functions.sort();
    functions.dedup();
    let mut dimensions: Vec<usize> = records.iter().map(|r| r.dimension).collect();
    dimensions.sort();
    dimensions.dedup();

    let mut table = SummaryTable {
        algorithms: algorithms.clone(),
        functions: functions.clone(),
        dimensions: dimensions.clone(),
        ..SummaryTable::default()
    };
    for &dim in &dimensions {
        let mut totals: Vec<usize> = alloc::vec![0; algorithms.len()];
        for &function in &functions {
            let mut present = Vec::new();
            for (col, &alg) in algorithms.iter().enumerate() {
                match groups.get(&(dim, function, alg)) {
                    Some(cell) => {
                        let owned: Vec<RunRecord> = cell.iter().map(|r| (*r).clone()).collect();
                        let fitness: Vec<f64> = owned.iter().map(|r| r.best_fitness).collect();
                        let (mean, std) = mean_std(&fitness).expect("groups are non-empty");
                        let sr = success_rate(&owned).expect("groups are non-empty");
                        present.push((col, SummaryRow {
                            function,
                            dimension: dim,
                            algorithm: alg,
                            runs: owned.len(),
                            mean,
                            std,
                            sr,
                            rank: 0,
                        }));
                    }
                    None => table.gaps.push((function, dim, alg)),
                }
            }
            let scores: Vec<(usize, f64)> = present.iter().map(|(c, r)| (*c, r.sr)).collect();
            for ((col, mut row), (_, rank)) in present.into_iter().zip(competition_rank(&scores)) {
                row.rank = rank;
                totals[col] += rank;
                table.rows.push(row);
            }
        }
        for (col, &alg) in algorithms.iter().enumerate() {
            table.totals.push(TotalRank {
                dimension: dim,
                algorithm: alg,
                total: totals[col],
            });
        }
    }
    table
}

/// Scientific notation with two significant digits: `3.3E-40`, `-4.2E+03`.
pub fn format_sci2(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = alloc::format!("{:.1e}", x);
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    alloc::format!("{mantissa}E{sign}{:02}", exp.unsigned_abs())
}

/// Success rate with two decimals, as used in the CSV output.
pub fn format_sr(sr: f64) -> String {
    alloc::format!("{sr:.2}")
}

/// Compact success rate for markdown cells: `1`, `0.26`, `0`.
fn format_sr_compact(sr: f64) -> String {
    let s = format_sr(sr);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() { "0".into() } else { s.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(Error::InvalidConfig("unknown format (expected csv or md)")),
        }
    }
}

pub const CSV_HEADER: &str = "function,dim,algorithm,mean,std,sr,rank";

pub fn emit(table: &SummaryTable, format: Format) -> String {
    match format {
        Format::Csv => emit_csv(table),
        Format::Markdown => emit_markdown(table),
    }
}

/// One row per (function, dim, algorithm). `mean`/`std` are the mean and
/// population standard deviation of best fitness.
pub fn emit_csv(table: &SummaryTable) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &table.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.function,
            r.dimension,
            r.algorithm,
            format_sci2(r.mean),
            format_sci2(r.std),
            format_sr(r.sr),
            r.rank
        );
    }
    out
}

fn markdown_header(out: &mut String, algorithms: &[Algorithm]) {
    out.push_str("| Fun |");
    for a in algorithms {
        let _ = write!(out, " {a} |");
    }
    out.push_str("\n|-----|");
    for _ in algorithms {
        out.push_str("---|");
    }
    out.push('\n');
}

/// Two tables per dimension: `SR/rank` with a total-rank row, then `mean/std`.
pub fn emit_markdown(table: &SummaryTable) -> String {
    let mut out = String::new();
    if table.dimensions.is_empty() {
        markdown_header(&mut out, &table.algorithms);
        return out;
    }
    for (k, &dim) in table.dimensions.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "### SR and ranks, D={dim}\n");
        markdown_header(&mut out, &table.algorithms);
        for &f in &table.functions {
            let _ = write!(out, "| {f} |");
            for &a in &table.algorithms {
                match table.row(f, dim, a) {
                    Some(r) => {
                        let _ = write!(out, " {}/{} |", format_sr_compact(r.sr), r.rank);
                    }
                    None => out.push_str(" - |"),
                }
            }
            out.push('\n');
        }
        out.push_str("| Total rank |");
        for &a in &table.algorithms {
            let _ = write!(out, " {} |", table.total(dim, a).unwrap_or(0));
        }
        let _ = writeln!(out, "\n\n### Quality of optima found (mean/std), D={dim}\n");
        markdown_header(&mut out, &table.algorithms);
        for &f in &table.functions {
            let _ = write!(out, "| {f} |");
            for &a in &table.algorithms {
                match table.row(f, dim, a) {
                    Some(r) => {
                        let _ = write!(out, " {}/{} |", format_sci2(r.mean), format_sci2(r.std));
                    }
                    None => out.push_str(" - |"),
                }
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn record(alg: Algorithm, f: FunctionId, dim: usize, best: f64, success: bool) -> RunRecord {
        RunRecord {
            algorithm: alg,
            function: f,
            dimension: dim,
            seed: 0,
            best_fitness: best,
            final_error: best,
            success,
            evaluations_used: 1,
            best_so_far_trace: vec![],
        }
    }

    #[test]
    fn success_rate_examples() {
        let all: Vec<_> = (0..4).map(|_| record(Algorithm::Nbde, FunctionId::F1, 10, 0.0, true)).collect();
        assert_eq!(success_rate(&all).unwrap(), 1.0);
        let some: Vec<_> = (0..50)
            .map(|k| record(Algorithm::Nbde, FunctionId::F1, 10, 0.0, k < 13))
            .collect();
        assert_eq!(success_rate(&some).unwrap(), 0.26);
        let none: Vec<_> = (0..3).map(|_| record(Algorithm::Nbde, FunctionId::F1, 10, 1.0, false)).collect();
        assert_eq!(success_rate(&none).unwrap(), 0.0);
        assert_eq!(success_rate(&[]), Err(Error::EmptyCell));
    }

    #[test]
    fn competition_rank_examples() {
        let ranks = |srs: &[f64]| -> Vec<usize> {
            let scores: Vec<(usize, f64)> = srs.iter().copied().enumerate().collect();
            competition_rank(&scores).into_iter().map(|(_, r)| r).collect()
        };
        assert_eq!(ranks(&[0.5, 0.5, 0.5]), vec![1, 1, 1]);
        assert_eq!(ranks(&[0.2, 0.9, 0.2, 0.5]), vec![3, 1, 3, 2]);
        assert_eq!(ranks(&[]), Vec::<usize>::new());
    }

    #[test]
    fn mean_std_examples() {
        assert_eq!(mean_std(&[1.0, 3.0]).unwrap(), (2.0, 1.0));
        assert_eq!(mean_std(&[0.1; 7]).unwrap(), (0.1, 0.0));
        assert_eq!(mean_std(&[5.0]).unwrap(), (5.0, 0.0));
        assert_eq!(mean_std(&[]), Err(Error::EmptyCell));
    }

    #[test]
    fn sci_formatting() {
        assert_eq!(format_sci2(0.0), "0.0E+00");
        assert_eq!(format_sci2(3.3e-40), "3.3E-40");
        assert_eq!(format_sci2(1.6e-39), "1.6E-39");
        assert_eq!(format_sci2(-4189.828872724339), "-4.2E+03");
        assert_eq!(format_sci2(9.96), "1.0E+01");
        assert_eq!(format_sci2(6800.0), "6.8E+03");
        assert_eq!(format_sr(1.0), "1.00");
        assert_eq!(format_sr_compact(1.0), "1");
        assert_eq!(format_sr_compact(0.26), "0.26");
        assert_eq!(format_sr_compact(0.9), "0.9");
        assert_eq!(format_sr_compact(0.0), "0");
    }

    #[test]
    fn single_cell_csv_row() {
        let t = summarize(&[record(Algorithm::Nbde, FunctionId::F7, 10, 0.0, true)]);
        assert_eq!(emit_csv(&t), "function,dim,algorithm,mean,std,sr,rank\nF7,10,nbde,0.0E+00,0.0E+00,1.00,1\n");
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = summarize(&[]);
        assert_eq!(emit_csv(&t), "function,dim,algorithm,mean,std,sr,rank\n");
        assert_eq!(emit_markdown(&t), "| Fun |\n|-----|\n");
    }

    #[test]
    fn summary_ranks_and_totals() {
        let mut records = Vec::new();
        // nbde succeeds everywhere, wsa only on F1
        for f in FunctionId::ALL {
            records.push(record(Algorithm::Nbde, f, 10, 1.0, true));
            records.push(record(Algorithm::Nbde, f, 10, 3.0, true));
            records.push(record(Algorithm::Wsa, f, 10, 5.0, f == FunctionId::F1));
        }
        let t = summarize(&records);
        assert_eq!(t.algorithms, vec![Algorithm::Nbde, Algorithm::Wsa]);
        let r = t.row(FunctionId::F3, 10, Algorithm::Nbde).unwrap();
        assert_eq!((r.mean, r.std, r.sr, r.rank, r.runs), (2.0, 1.0, 1.0, 1, 2));
        assert_eq!(t.row(FunctionId::F1, 10, Algorithm::Wsa).unwrap().rank, 1);
        assert_eq!(t.total(10, Algorithm::Nbde), Some(9));
        // ranked 1 on F1 and 2 on the other eight
        assert_eq!(t.total(10, Algorithm::Wsa), Some(17));
        assert!(t.gaps.is_empty());
        let md = emit_markdown(&t);
        assert!(md.contains("| F1 | 1/1 | 1/1 |"));
        assert!(md.contains("| Total rank | 9 | 17 |"));
        assert!(md.contains("| F2 | 2.0E+00/1.0E+00 | 5.0E+00/0.0E+00 |"));
    }

    #[test]
    fn total_rank_sums_per_function_ranks() {
        // one column ranked 1 on eight functions and 2 on one
        let mut records = Vec::new();
        for f in FunctionId::ALL {
            records.push(record(Algorithm::Nbde, f, 10, 0.0, f != FunctionId::F9));
            records.push(record(Algorithm::DeBest2, f, 10, 0.0, true));
        }
        let t = summarize(&records);
        assert_eq!(t.total(10, Algorithm::Nbde), Some(10));
        assert_eq!(t.total(10, Algorithm::DeBest2), Some(9));
    }

    #[test]
    fn missing_cells_become_gaps() {
        let records = vec![
            record(Algorithm::Nbde, FunctionId::F1, 10, 0.0, true),
            record(Algorithm::Wsa, FunctionId::F2, 10, 0.0, true),
        ];
        let t = summarize(&records);
        assert_eq!(t.rows.len(), 2);
        assert_eq!(
            t.gaps,
            vec![(FunctionId::F1, 10, Algorithm::Wsa), (FunctionId::F2, 10, Algorithm::Nbde)]
        );
        assert!(emit_markdown(&t).contains("| F1 | 1/1 | - |"));
    }

    #[test]
    fn seeds_are_distinct_and_stable() {
        let plan = ExperimentPlan {
            algorithms: vec![AlgorithmSetup::new(Algorithm::Nbde)],
            functions: vec![FunctionId::F7],
            dimensions: vec![10],
            runs_per_cell: 5,
            ..ExperimentPlan::default()
        };
        let cells = plan.cells();
        assert_eq!(cells.len(), 5);
        let mut seeds: Vec<u64> = cells.iter().map(|c| plan.seed(c)).collect();
        assert_eq!(seeds[2], cell_seed(0, Algorithm::Nbde, FunctionId::F7, 10, 2));
        seeds.sort();
        seeds.dedup();
        assert_eq!(seeds.len(), 5);
        assert_ne!(
            cell_seed(0, Algorithm::Nbde, FunctionId::F7, 10, 0),
            cell_seed(0, Algorithm::Wsa, FunctionId::F7, 10, 0)
        );
    }

    #[test]
    fn plan_validation_and_resolution() {
        let mut plan = ExperimentPlan::default();
        assert!(plan.validate().is_ok());
        assert_eq!(plan.cells().len(), 4 * 9 * 3 * 50);
        plan.algorithms.push(AlgorithmSetup::new(Algorithm::Wsa));
        assert!(plan.validate().is_err());

        let setup = AlgorithmSetup {
            np: Some(12),
            cr: Some(0.3),
            ..AlgorithmSetup::new(Algorithm::DeRand1)
        };
        match setup.resolve(30, 300_000) {
            AlgorithmConfig::Baseline(c) => {
                assert_eq!((c.np, c.cr, c.f, c.max_evaluations), (12, 0.3, 0.5, 300_000));
            }
            other => panic!("{other:?}"),
        }
        let nb = AlgorithmSetup::new(Algorithm::Nbde).resolve(10, 5_000);
        assert_eq!(nb.np(), 40);
        assert_eq!(nb.max_evaluations(), 5_000);
    }

    #[test]
    fn invalid_cells_are_reported_not_fatal() {
        let plan = ExperimentPlan {
            algorithms: vec![
                AlgorithmSetup {
                    np: Some(2),
                    ..AlgorithmSetup::new(Algorithm::Nbde)
                },
                AlgorithmSetup::new(Algorithm::DeRand1),
            ],
            functions: vec![FunctionId::F1],
            dimensions: vec![2],
            runs_per_cell: 2,
            budget_multiplier: 100,
            ..ExperimentPlan::default()
        };
        let out = run_experiment(&plan).unwrap();
        assert_eq!(out.records.len(), 2);
        assert_eq!(out.failures.len(), 2);
        assert!(matches!(out.failures[0].error, Error::InvalidConfig(_)));
    }

    #[test]
    fn algorithm_tags_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.tag().parse::<Algorithm>().unwrap(), a);
        }
        assert!("jade".parse::<Algorithm>().is_err());
    }
}
