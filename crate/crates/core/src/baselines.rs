//! Comparison optimizers: DE/rand/1/bin, DE/best/2/bin and the simplified
//! whale swarm mutation (distance attenuation disabled).

use alloc::vec::Vec;
use core::fmt;

use crate::benchmarks::{Evaluator, ObjectiveSpec};
use crate::engine::{self, GenerationState, RunRecord, Variation};
use crate::error::{Error, Result};
use crate::harness::Algorithm;
use crate::nbde::{crossover_binary, BUDGET_PER_DIM};
use crate::population::{nearest_better, Population};
use crate::rng::RngStream;

pub const DEFAULT_F: f64 = 0.5;
pub const DEFAULT_CR: f64 = 0.9;
pub const WSA_NP: usize = 40;
/// Upper end of the whale step factor `U[0, 2)`.
pub const WSA_STEP_MAX: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaselineAlgorithm {
    DeRand1,
    DeBest2,
    Wsa,
}

impl BaselineAlgorithm {
    /// Population size schedule: 30 / 100 / 200 for D = 10 / 30 / 50 for the
    /// DE variants (nearest schedule entry for other D), 40 for WSA.
    pub fn default_np(self, dim: usize) -> usize {
        match self {
            BaselineAlgorithm::Wsa => WSA_NP,
            _ if dim <= 10 => 30,
            _ if dim <= 30 => 100,
            _ => 200,
        }
    }

    pub fn algorithm(self) -> Algorithm {
        match self {
            BaselineAlgorithm::DeRand1 => Algorithm::DeRand1,
            BaselineAlgorithm::DeBest2 => Algorithm::DeBest2,
            BaselineAlgorithm::Wsa => Algorithm::Wsa,
        }
    }
}

impl fmt::Display for BaselineAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.algorithm().fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineConfig {
    pub algorithm: BaselineAlgorithm,
    pub np: usize,
    /// Scale factor; unused by WSA.
    pub f: f64,
    /// Binary crossover rate; unused by WSA.
    pub cr: f64,
    pub max_evaluations: u64,
}

impl BaselineConfig {
    pub fn for_dimension(algorithm: BaselineAlgorithm, dim: usize) -> Self {
        Self {
            algorithm,
            np: algorithm.default_np(dim),
            f: DEFAULT_F,
            cr: DEFAULT_CR,
            max_evaluations: BUDGET_PER_DIM * dim as u64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let min_np = match self.algorithm {
            BaselineAlgorithm::DeRand1 | BaselineAlgorithm::Wsa => 4,
            BaselineAlgorithm::DeBest2 => 5,
        };
        if self.np < min_np {
            return Err(Error::InvalidConfig("population too small for the mutation strategy"));
        }
        if !self.f.is_finite() {
            return Err(Error::InvalidConfig("scale factor must be finite"));
        }
        if !(0.0..=1.0).contains(&self.cr) {
            return Err(Error::InvalidConfig("crossover rate must lie in [0, 1]"));
        }
        if self.max_evaluations < self.np as u64 {
            return Err(Error::InvalidConfig(
                "evaluation budget must cover the initial population",
            ));
        }
        Ok(())
    }
}

/// `base + f·Σ(plus) − f·Σ(minus)`, coordinate-wise.
fn differential(base: &[f64], f: f64, plus: &[&[f64]], minus: &[&[f64]]) -> Vec<f64> {
    (0..base.len())
        .map(|j| {
            let diff: f64 = plus.iter().map(|v| v[j]).sum::<f64>() - minus.iter().map(|v| v[j]).sum::<f64>();
            base[j] + f * diff
        })
        .collect()
}

/// `x_r1 + f·(x_r2 − x_r3)` with `r1, r2, r3` distinct and different from `i`.
/// Also returns the drawn indices.
pub fn mutate_de_rand_1_indexed(
    pop: &Population,
    i: usize,
    f: f64,
    rng: &mut RngStream,
) -> Result<(Vec<f64>, [usize; 3])> {
    if pop.len() < 4 {
        return Err(Error::InvalidConfig("DE/rand/1 needs at least 4 members"));
    }
    let r = rng
        .distinct_indices::<3>(pop.len(), &[i])
        .expect("population has at least 4 members");
    let v = differential(pop.position(r[0]), f, &[pop.position(r[1])], &[pop.position(r[2])]);
    Ok((v, r))
}

pub fn mutate_de_rand_1(pop: &Population, i: usize, f: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
    mutate_de_rand_1_indexed(pop, i, f, rng).map(|(v, _)| v)
}

/// `x_best + f·(x_r1 + x_r2 − x_r3 − x_r4)` with `r1..r4` distinct and
/// different from both `i` and `best`.
pub fn mutate_de_best_2(
    pop: &Population,
    i: usize,
    best: usize,
    f: f64,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    if pop.len() < 5 {
        return Err(Error::InvalidConfig("DE/best/2 needs at least 5 members"));
    }
    let r = rng
        .distinct_indices::<4>(pop.len(), &[i, best])
        .ok_or(Error::InvalidConfig("DE/best/2 needs at least 6 members when i is not the best"))?;
    let p = |k: usize| pop.position(r[k]);
    Ok(differential(pop.position(best), f, &[p(0), p(1)], &[p(2), p(3)]))
}

/// Whale move with explicit per-coordinate step factors `u`.
pub fn whale_move(x_i: &[f64], y: &[f64], u: &[f64]) -> Vec<f64> {
    x_i.iter()
        .zip(y)
        .zip(u)
        .map(|((&x, &g), &s)| x + s * (g - x))
        .collect()
}

/// Move member `i` toward guide `y` by an independent `U[0, 2)` factor per coordinate.
pub fn mutate_wsa(pop: &Population, i: usize, y: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    let x_i = pop.position(i);
    let guide = pop.position(y);
    if x_i.len() != guide.len() {
        return Err(Error::Dimension {
            expected: x_i.len(),
            actual: guide.len(),
        });
    }
    let u: Vec<f64> = (0..x_i.len()).map(|_| rng.uniform_in(0.0, WSA_STEP_MAX)).collect();
    Ok(whale_move(x_i, guide, &u))
}

/// Unclamped trial vector for member `i` under `config`.
pub fn propose(
    pop: &Population,
    i: usize,
    best: usize,
    config: &BaselineConfig,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    match config.algorithm {
        BaselineAlgorithm::DeRand1 => {
            let mutant = mutate_de_rand_1(pop, i, config.f, rng)?;
            crossover_binary(pop.position(i), &mutant, config.cr, rng)
        }
        BaselineAlgorithm::DeBest2 => {
            let mutant = mutate_de_best_2(pop, i, best, config.f, rng)?;
            crossover_binary(pop.position(i), &mutant, config.cr, rng)
        }
        BaselineAlgorithm::Wsa => {
            let guide = nearest_better(pop, i, rng)?;
            mutate_wsa(pop, i, guide, rng)
        }
    }
}

struct BaselineVariation<'a>(&'a BaselineConfig);

impl Variation for BaselineVariation<'_> {
    fn trial(&mut self, pop: &Population, i: usize, best: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
        propose(pop, i, best, self.0, rng)
    }
}

pub fn initialize(config: &BaselineConfig, spec: &ObjectiveSpec, rng: &mut RngStream) -> Result<GenerationState> {
    config.validate()?;
    let mut evaluator = Evaluator::new(spec, config.max_evaluations);
    engine::initialize(config.np, &mut evaluator, rng)
}

pub fn step(
    state: GenerationState,
    config: &BaselineConfig,
    spec: &ObjectiveSpec,
    rng: &mut RngStream,
) -> Result<GenerationState> {
    config.validate()?;
    let mut evaluator = Evaluator::resume(spec, state.evaluations_used, config.max_evaluations);
    engine::step_with(state, &mut BaselineVariation(config), &mut evaluator, rng)
}

pub fn run_baseline(config: &BaselineConfig, spec: &ObjectiveSpec, seed: u64) -> Result<RunRecord> {
    config.validate()?;
    engine::run_with(
        config.algorithm.algorithm(),
        config.np,
        config.max_evaluations,
        spec,
        seed,
        &mut BaselineVariation(config),
    )
}
