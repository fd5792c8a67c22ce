//! `nbde solve | bench | table`.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use nbde_core::harness::{emit, summarize, AlgorithmSetup, ExperimentPlan, Format};
use nbde_core::nbde::BUDGET_PER_DIM;
use nbde_core::{Algorithm, CrossoverMix, FunctionId, ObjectiveSpec};

use crate::formats::{parse_records, records_to_csv, trace_file_name, trace_to_csv};
use crate::output::{ensure_writable_dir, write_atomic};
use crate::runner::run_experiment;

#[derive(Debug, Parser)]
#[command(name = "nbde", version, about = "Nearest-and-better differential evolution benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one optimization and print its outcome.
    Solve(SolveArgs),
    /// Run an experiment grid and write summary tables.
    Bench(BenchArgs),
    /// Re-render tables from a saved records file.
    Table(TableArgs),
}

fn parse_function(s: &str) -> Result<FunctionId, String> {
    s.parse().map_err(|e: nbde_core::Error| e.to_string())
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: nbde_core::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: nbde_core::Error| e.to_string())
}

fn parse_dim(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(d) if d >= 2 => Ok(d),
        _ => Err(format!("dimension must be an integer >= 2, got `{s}`")),
    }
}

/// `b,e,n` weights for binary, exponential and no crossover.
fn parse_mix(s: &str) -> Result<CrossoverMix, String> {
    let w: Vec<f64> = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("invalid weight `{v}`")))
        .collect::<Result<_, _>>()?;
    match w[..] {
        [b, e, n] => CrossoverMix::new(b, e, n).map_err(|e| e.to_string()),
        _ => Err("mix needs three comma-separated weights".into()),
    }
}

fn parse_positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

fn parse_unit(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if (0.0..=1.0).contains(&v) => Ok(v),
        _ => Err(format!("expected a number in [0, 1], got `{s}`")),
    }
}

/// Parsed `--functions` value.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionList(pub Vec<FunctionId>);

fn parse_function_list_arg(s: &str) -> Result<FunctionList, String> {
    parse_function_list(s).map(FunctionList)
}

/// `F1..F9`, `F2,F7` or a mix of both.
pub fn parse_function_list(s: &str) -> Result<Vec<FunctionId>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (parse_function(a)?, parse_function(b)?);
            if a > b {
                return Err(format!("empty function range `{part}`"));
            }
            out.extend(FunctionId::ALL.into_iter().filter(|f| (a..=b).contains(f)));
        } else {
            out.push(parse_function(part)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Parameter overrides shared by `solve` and `bench`.
#[derive(Debug, Clone, Args)]
pub struct Overrides {
    /// Population size (default: per-algorithm schedule)
    #[arg(long, value_parser = clap::value_parser!(u64).range(4..))]
    pub np: Option<u64>,
    /// Lower end of the NbDE crossover-rate range
    #[arg(long, value_parser = parse_unit)]
    pub cr_low: Option<f64>,
    /// Upper end of the NbDE crossover-rate range
    #[arg(long, value_parser = parse_unit)]
    pub cr_high: Option<f64>,
    /// NbDE crossover weights: binary,exponential,none
    #[arg(long, value_parser = parse_mix)]
    pub mix: Option<CrossoverMix>,
    /// Scale factor for the DE baselines
    #[arg(long)]
    pub f: Option<f64>,
    /// Crossover rate for the DE baselines
    #[arg(long, value_parser = parse_unit)]
    pub cr: Option<f64>,
    /// Replace the value-to-reach used for the success flag
    #[arg(long, value_parser = parse_positive_f64)]
    pub vtr_override: Option<f64>,
}

impl Overrides {
    fn setup(&self, algorithm: Algorithm) -> AlgorithmSetup {
        AlgorithmSetup {
            algorithm: Some(algorithm),
            np: self.np.map(|v| v as usize),
            cr_low: self.cr_low,
            cr_high: self.cr_high,
            mix: self.mix,
            f: self.f,
            cr: self.cr,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_parser = parse_function)]
    pub function: FunctionId,
    #[arg(long, default_value_t = 10, value_parser = parse_dim)]
    pub dim: usize,
    #[arg(long, default_value = "nbde", value_parser = parse_algorithm)]
    pub alg: Algorithm,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Evaluation budget (default 10000·dim)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    #[command(flatten)]
    pub overrides: Overrides,
    /// Write the best-so-far trace as CSV into --out
    #[arg(long)]
    pub trace: bool,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "F1..F9", value_parser = parse_function_list_arg)]
    pub functions: FunctionList,
    #[arg(long, default_value = "10", value_delimiter = ',', value_parser = parse_dim)]
    pub dims: Vec<usize>,
    #[arg(long, default_value = "nbde,de_rand_1,de_best_2,wsa", value_delimiter = ',', value_parser = parse_algorithm)]
    pub algs: Vec<Algorithm>,
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    pub runs: u64,
    /// Evaluation budget per problem dimension
    #[arg(long, default_value_t = BUDGET_PER_DIM, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_mult: u64,
    /// Base seed from which every run's seed is derived
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub overrides: Overrides,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
    /// Table printed to stdout (both are written to --out)
    #[arg(long, default_value = "md", value_parser = parse_format)]
    pub format: Format,
    /// Also write one trace CSV per run into <out>/traces
    #[arg(long)]
    pub trace: bool,
    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    pub parallel: usize,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Records CSV written by `bench`
    pub records: PathBuf,
    #[arg(long, default_value = "md", value_parser = parse_format)]
    pub format: Format,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Solve(args) => solve(args, out),
        Command::Bench(args) => bench(args, out),
        Command::Table(args) => table(args, out),
    }
}

pub fn solve(args: SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let mut spec = ObjectiveSpec::new(args.function, args.dim)?;
    if let Some(v) = args.overrides.vtr_override {
        spec = spec.with_vtr(v)?;
    }
    let budget = args.budget.unwrap_or(BUDGET_PER_DIM * args.dim as u64);
    let config = args.overrides.setup(args.alg).resolve(args.dim, budget);
    config.validate()?;
    if args.trace {
        ensure_writable_dir(&args.out)?;
    }
    writeln!(
        out,
        "config: function={} dim={} seed={} vtr={:e} {}",
        spec.id, spec.dimension, args.seed, spec.vtr, config
    )?;
    let record = config.run(&spec, args.seed)?;
    writeln!(out, "best_fitness: {:e}", record.best_fitness)?;
    writeln!(out, "error: {:e}", record.final_error)?;
    writeln!(out, "evaluations: {}", record.evaluations_used)?;
    writeln!(out, "success: {}", record.success)?;
    if args.trace {
        let path = args.out.join(trace_file_name(&record));
        write_atomic(&path, &trace_to_csv(&record))?;
        writeln!(out, "trace: {}", path.display())?;
    }
    Ok(0)
}

pub fn bench_plan(args: &BenchArgs) -> ExperimentPlan {
    ExperimentPlan {
        algorithms: args.algs.iter().map(|&a| args.overrides.setup(a)).collect(),
        functions: args.functions.0.clone(),
        dimensions: args.dims.clone(),
        runs_per_cell: args.runs as usize,
        budget_multiplier: args.budget_mult,
        base_seed: args.seed,
        vtr_override: args.overrides.vtr_override,
    }
}

pub fn bench(args: BenchArgs, out: &mut dyn Write) -> Result<i32> {
    let plan = bench_plan(&args);
    plan.validate()?;
    for &dim in &plan.dimensions {
        for setup in &plan.algorithms {
            setup
                .resolve(dim, plan.budget_multiplier * dim as u64)
                .validate()
                .with_context(|| format!("{} at D={dim}", setup.algorithm()))?;
        }
    }
    ensure_writable_dir(&args.out)?;
    let trace_dir = args.out.join("traces");
    if args.trace {
        ensure_writable_dir(&trace_dir)?;
    }

    let functions: Vec<String> = plan.functions.iter().map(ToString::to_string).collect();
    writeln!(
        out,
        "plan: functions={} dims={:?} runs={} budget_mult={} base_seed={} vtr_override={:?}",
        functions.join(","),
        plan.dimensions,
        plan.runs_per_cell,
        plan.budget_multiplier,
        plan.base_seed,
        plan.vtr_override
    )?;
    for &dim in &plan.dimensions {
        for setup in &plan.algorithms {
            writeln!(out, "config D={dim}: {}", setup.resolve(dim, plan.budget_multiplier * dim as u64))?;
        }
    }

    let outcome = run_experiment(&plan, args.parallel)?;
    for f in &outcome.failures {
        eprintln!(
            "cell {} {} D={} run {} failed: {}",
            plan.algorithms[f.cell.algorithm].algorithm(),
            f.cell.function,
            f.cell.dimension,
            f.cell.run,
            f.error
        );
    }
    let table = summarize(&outcome.records);
    write_atomic(&args.out.join("records.csv"), &records_to_csv(&outcome.records))?;
    write_atomic(&args.out.join("summary.csv"), &emit(&table, Format::Csv))?;
    write_atomic(&args.out.join("summary.md"), &emit(&table, Format::Markdown))?;
    if args.trace {
        for r in &outcome.records {
            write_atomic(&trace_dir.join(trace_file_name(r)), &trace_to_csv(r))?;
        }
    }

    write!(out, "{}", emit(&table, args.format))?;
    for t in &table.totals {
        writeln!(out, "total rank D={} {}: {}", t.dimension, t.algorithm, t.total)?;
    }
    Ok(if outcome.failures.is_empty() { 0 } else { 1 })
}

pub fn table(args: TableArgs, out: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(&args.records)
        .with_context(|| format!("reading {}", args.records.display()))?;
    let records = parse_records(&text).with_context(|| format!("parsing {}", args.records.display()))?;
    write!(out, "{}", emit(&summarize(&records), args.format))?;
    Ok(0)
}

/// Parse arguments, returning clap's usage error on invalid input.
pub fn parse_from<I, T>(args: I) -> Result<Cli>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => Ok(cli),
        Err(e) => bail!(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_lists() {
        assert_eq!(parse_function_list("F1..F9").unwrap(), FunctionId::ALL.to_vec());
        assert_eq!(
            parse_function_list("F7,F2,F2").unwrap(),
            vec![FunctionId::F2, FunctionId::F7]
        );
        assert_eq!(
            parse_function_list("F1..F3,F8").unwrap(),
            vec![FunctionId::F1, FunctionId::F2, FunctionId::F3, FunctionId::F8]
        );
        assert!(parse_function_list("F99").is_err());
        assert!(parse_function_list("F5..F2").is_err());
    }

    #[test]
    fn flag_validation() {
        assert!(parse_mix("1,0,0").is_ok());
        assert!(parse_mix("0.5,0.5").is_err());
        assert!(parse_mix("0.5,0.5,0.5").is_err());
        assert!(parse_dim("1").is_err());
        assert!(parse_unit("1.5").is_err());
        assert!(parse_from(["nbde", "solve", "--function", "F99"]).is_err());
        assert!(parse_from(["nbde", "solve", "--function", "F7", "--alg", "jade"]).is_err());
        assert!(parse_from(["nbde", "bench", "--np", "3"]).is_err());
        assert!(parse_from(["nbde", "bench", "--format", "xml"]).is_err());
        let cli = parse_from(["nbde", "bench", "--dims", "10,30", "--algs", "nbde,wsa"]).unwrap();
        match cli.command {
            Command::Bench(b) => {
                assert_eq!(b.dims, vec![10, 30]);
                assert_eq!(b.algs, vec![Algorithm::Nbde, Algorithm::Wsa]);
                assert_eq!(b.functions.0.len(), 9);
                assert_eq!((b.runs, b.budget_mult), (50, 10_000));
            }
            other => panic!("{other:?}"),
        }
    }
}
