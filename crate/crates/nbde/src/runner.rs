use anyhow::{Context, Result};
use nbde_core::harness::{ExperimentOutcome, ExperimentPlan};
use rayon::prelude::*;

/// Run every cell of `plan` on `workers` threads (0 = rayon default).
///
/// Each run seeds its own stream from the plan, and results come back in
/// cell order, so the outcome does not depend on `workers`.
pub fn run_experiment(plan: &ExperimentPlan, workers: usize) -> Result<ExperimentOutcome> {
    plan.validate()?;
    let cells = plan.cells();
    if workers == 1 {
        return Ok(ExperimentOutcome::from_results(
            cells.into_iter().map(|c| (c, plan.run_cell(&c))),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .context("building worker pool")?;
    let results: Vec<_> = pool.install(|| {
        cells
            .par_iter()
            .map(|c| (*c, plan.run_cell(c)))
            .collect()
    });
    Ok(ExperimentOutcome::from_results(results))
}
