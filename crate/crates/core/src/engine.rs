//! Generation loop shared by every optimizer: propose, clamp, evaluate, select.

use alloc::vec::Vec;

use crate::benchmarks::{Evaluator, FunctionId, ObjectiveSpec};
use crate::error::{Error, Result};
use crate::harness::Algorithm;
use crate::nbde::candidate_survives;
use crate::population::{clamp_to_bounds, uniform_init, Individual, Population};
use crate::rng::RngStream;

/// Loop state between generations.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationState {
    pub population: Population,
    /// Minimum-fitness member, lowest index on ties.
    pub best_index: usize,
    pub evaluations_used: u64,
}

impl GenerationState {
    pub fn best_fitness(&self) -> f64 {
        self.population.members[self.best_index]
            .fitness
            .expect("generation state holds an evaluated population")
    }
}

/// Best-so-far fitness after `evaluations` objective calls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub evaluations: u64,
    pub best_fitness: f64,
}

/// Outcome of one independent run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub function: FunctionId,
    pub dimension: usize,
    pub seed: u64,
    pub best_fitness: f64,
    /// `best_fitness - optimum_value`.
    pub final_error: f64,
    pub success: bool,
    pub evaluations_used: u64,
    pub best_so_far_trace: Vec<TracePoint>,
}

/// Produces the unclamped trial vector for member `i`.
pub(crate) trait Variation {
    fn trial(
        &mut self,
        pop: &Population,
        i: usize,
        best: usize,
        rng: &mut RngStream,
    ) -> Result<Vec<f64>>;
}

pub(crate) fn initialize(
    np: usize,
    evaluator: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Result<GenerationState> {
    if evaluator.max() < np as u64 {
        return Err(Error::InvalidConfig(
            "evaluation budget must cover the initial population",
        ));
    }
    let mut population = uniform_init(&evaluator.spec().bounds, np, rng)?;
    for m in &mut population.members {
        m.fitness = Some(evaluator.evaluate(&m.position, rng)?.value);
    }
    let best_index = population.best_index()?;
    Ok(GenerationState {
        population,
        best_index,
        evaluations_used: evaluator.used(),
    })
}

/// One pass over the population, updating survivors in place so member
/// `i + 1` already sees member `i`'s replacement. Stops early when the
/// budget runs out, leaving the remaining members untouched.
pub(crate) fn step_with<V: Variation>(
    mut state: GenerationState,
    variation: &mut V,
    evaluator: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Result<GenerationState> {
    if evaluator.exhausted() {
        return Err(Error::BudgetExhausted(evaluator.max()));
    }
    let bounds = &evaluator.spec().bounds;
    for i in 0..state.population.len() {
        if evaluator.exhausted() {
            break;
        }
        let trial = variation.trial(&state.population, i, state.best_index, rng)?;
        let position = clamp_to_bounds(&trial, bounds)?;
        let value = evaluator.evaluate(&position, rng)?.value;
        let candidate = Individual::evaluated(position, value);
        let parent = &mut state.population.members[i];
        if candidate_survives(parent, &candidate)? {
            *parent = candidate;
            let best_f = state.best_fitness();
            if value < best_f || (value == best_f && i < state.best_index) {
                state.best_index = i;
            }
        }
    }
    state.population.generation += 1;
    state.evaluations_used = evaluator.used();
    Ok(state)
}

pub(crate) fn run_with<V: Variation>(
    algorithm: Algorithm,
    np: usize,
    max_evaluations: u64,
    spec: &ObjectiveSpec,
    seed: u64,
    variation: &mut V,
) -> Result<RunRecord> {
    let mut rng = RngStream::seed_from_u64(seed);
    let mut evaluator = Evaluator::new(spec, max_evaluations);
    let mut state = initialize(np, &mut evaluator, &mut rng)?;
    let mut trace = alloc::vec![TracePoint {
        evaluations: state.evaluations_used,
        best_fitness: state.best_fitness(),
    }];
    while !evaluator.exhausted() {
        state = step_with(state, variation, &mut evaluator, &mut rng)?;
        trace.push(TracePoint {
            evaluations: state.evaluations_used,
            best_fitness: state.best_fitness(),
        });
    }
    let best_fitness = state.best_fitness();
    let final_error = best_fitness - spec.optimum_value;
    Ok(RunRecord {
        algorithm,
        function: spec.id,
        dimension: spec.dimension,
        seed,
        best_fitness,
        final_error,
        success: final_error <= spec.vtr,
        evaluations_used: state.evaluations_used,
        best_so_far_trace: trace,
    })
}
