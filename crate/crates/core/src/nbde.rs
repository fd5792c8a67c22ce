//! NbDE: differential evolution guided by each member's nearest better
//! neighbor, with a random choice between binary, exponential and no
//! crossover for every candidate.
//!
//! For member `i` with nearest better neighbor `y` and two random members
//! `r1 != r2` (both distinct from `i` and `y`) the mutant is
//!
//! ```text
//! v = x_i + a·(x_r1 − x_r2) + b·(y − x_i),   a, b ~ U[0, 1)
//! ```
//!
//! with one scalar `a` and one scalar `b` per mutant. The crossover rate is
//! redrawn from `U[cr_low, cr_high]` for every candidate.
//!
//! [`RandomTerm::TowardMember`] replaces the random difference by
//! `x_r2 − x_i`. Every term of that variant pulls toward existing members,
//! so populations collapse onto a single point within a few hundred
//! generations; it is kept for comparison only.

use alloc::vec::Vec;

use crate::benchmarks::{Evaluator, ObjectiveSpec};
use crate::engine::{self, GenerationState, RunRecord, Variation};
use crate::error::{Error, Result};
use crate::harness::Algorithm;
use crate::population::{nearest_better, Individual, Population};
use crate::rng::RngStream;

pub const DEFAULT_NP: usize = 40;
pub const DEFAULT_CR_LOW: f64 = 0.4;
pub const DEFAULT_CR_HIGH: f64 = 0.9;
/// Evaluation budget per problem dimension.
pub const BUDGET_PER_DIM: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossoverKind {
    Binary,
    Exponential,
    /// The mutant is used unchanged.
    None,
}

/// Form of the random term of the hybrid mutant.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum RandomTerm {
    /// `x_r1 − x_r2`
    #[default]
    Difference,
    /// `x_r2 − x_i`
    TowardMember,
}

/// Selection probabilities for the three crossover operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverMix {
    pub binary: f64,
    pub exponential: f64,
    pub none: f64,
}

impl CrossoverMix {
    pub const UNIFORM: CrossoverMix = CrossoverMix {
        binary: 1.0 / 3.0,
        exponential: 1.0 / 3.0,
        none: 1.0 / 3.0,
    };

    pub fn new(binary: f64, exponential: f64, none: f64) -> Result<Self> {
        let mix = Self {
            binary,
            exponential,
            none,
        };
        mix.validate()?;
        Ok(mix)
    }

    pub fn validate(&self) -> Result<()> {
        let w = [self.binary, self.exponential, self.none];
        if w.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidConfig("crossover weights must be nonnegative"));
        }
        if libm::fabs(w.iter().sum::<f64>() - 1.0) > 1e-12 {
            return Err(Error::InvalidConfig("crossover weights must sum to 1"));
        }
        Ok(())
    }
}

impl Default for CrossoverMix {
    fn default() -> Self {
        Self::UNIFORM
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NbdeConfig {
    pub np: usize,
    pub cr_low: f64,
    pub cr_high: f64,
    pub crossover_mix: CrossoverMix,
    pub random_term: RandomTerm,
    pub max_evaluations: u64,
}

impl NbdeConfig {
    /// Defaults with a budget of `10000·dim` evaluations.
    pub fn for_dimension(dim: usize) -> Self {
        Self {
            np: DEFAULT_NP,
            cr_low: DEFAULT_CR_LOW,
            cr_high: DEFAULT_CR_HIGH,
            crossover_mix: CrossoverMix::UNIFORM,
            random_term: RandomTerm::Difference,
            max_evaluations: BUDGET_PER_DIM * dim as u64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.np < 4 {
            return Err(Error::InvalidConfig("population size must be at least 4"));
        }
        if !(0.0 <= self.cr_low && self.cr_low <= self.cr_high && self.cr_high <= 1.0) {
            return Err(Error::InvalidConfig(
                "crossover rates must satisfy 0 <= cr_low <= cr_high <= 1",
            ));
        }
        if self.max_evaluations < self.np as u64 {
            return Err(Error::InvalidConfig(
                "evaluation budget must cover the initial population",
            ));
        }
        self.crossover_mix.validate()
    }
}

/// `x_i + a·(x_r1 − x_r2) + b·(y − x_i)` for fixed factors.
pub fn hybrid_mutant(x_i: &[f64], x_r1: &[f64], x_r2: &[f64], y: &[f64], a: f64, b: f64) -> Vec<f64> {
    (0..x_i.len())
        .map(|j| x_i[j] + a * (x_r1[j] - x_r2[j]) + b * (y[j] - x_i[j]))
        .collect()
}

/// Hybrid mutant for member `i` guided by member `y`, using the default
/// random difference. Not clamped.
pub fn mutate_nbde(pop: &Population, i: usize, y: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    mutate_nbde_with(pop, i, y, RandomTerm::Difference, rng)
}

pub fn mutate_nbde_with(
    pop: &Population,
    i: usize,
    y: usize,
    term: RandomTerm,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    if i == y {
        return Err(Error::Protocol("guide must differ from the current member"));
    }
    let x_i = pop.position(i);
    let guide = pop.position(y);
    match term {
        RandomTerm::Difference => {
            if pop.len() < 4 {
                return Err(Error::InvalidConfig("hybrid mutation needs at least 4 members"));
            }
            let [r1, r2] = rng
                .distinct_indices::<2>(pop.len(), &[i, y])
                .expect("at least two free indices");
            let a = rng.uniform();
            let b = rng.uniform();
            Ok(hybrid_mutant(x_i, pop.position(r1), pop.position(r2), guide, a, b))
        }
        RandomTerm::TowardMember => {
            if pop.len() < 3 {
                return Err(Error::InvalidConfig("hybrid mutation needs at least 3 members"));
            }
            let r2 = rng
                .index_excluding(pop.len(), &[i, y])
                .expect("at least one free index");
            let a = rng.uniform();
            let b = rng.uniform();
            Ok(hybrid_mutant(x_i, pop.position(r2), x_i, guide, a, b))
        }
    }
}

fn check_lengths(parent: &[f64], mutant: &[f64]) -> Result<()> {
    if parent.len() == mutant.len() {
        Ok(())
    } else {
        Err(Error::Dimension {
            expected: parent.len(),
            actual: mutant.len(),
        })
    }
}

/// Binary crossover with explicit per-coordinate draws: coordinate `j`
/// comes from the mutant when `draws[j] <= cr`.
pub fn binary_crossover_with(parent: &[f64], mutant: &[f64], cr: f64, draws: &[f64]) -> Result<Vec<f64>> {
    check_lengths(parent, mutant)?;
    check_lengths(parent, draws)?;
    Ok(parent
        .iter()
        .zip(mutant)
        .zip(draws)
        .map(|((&p, &m), &u)| if u <= cr { m } else { p })
        .collect())
}

/// Per-coordinate Bernoulli takeover. No coordinate is forced from the
/// mutant, so the result may equal the parent.
pub fn crossover_binary(parent: &[f64], mutant: &[f64], cr: f64, rng: &mut RngStream) -> Result<Vec<f64>> {
    check_lengths(parent, mutant)?;
    Ok(parent
        .iter()
        .zip(mutant)
        .map(|(&p, &m)| if rng.uniform() <= cr { m } else { p })
        .collect())
}

/// Mask of mutant coordinates for a window starting at `start` (0-based)
/// that extends `extra` coordinates further, wrapping past the end.
pub fn exponential_window(dim: usize, start: usize, extra: usize) -> Vec<bool> {
    let mut mask = alloc::vec![false; dim];
    for k in 0..(extra + 1).min(dim) {
        mask[(start + k) % dim] = true;
    }
    mask
}

/// Number of `dim` uniform draws that are `<= cr`: the window extension
/// of exponential crossover.
pub fn window_extension(dim: usize, cr: f64, rng: &mut RngStream) -> usize {
    (0..dim).filter(|_| rng.uniform() <= cr).count()
}

/// Contiguous, wrapping window of mutant coordinates. The window starts at
/// a uniform coordinate and extends by [`window_extension`] more.
pub fn crossover_exponential(
    parent: &[f64],
    mutant: &[f64],
    cr: f64,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    check_lengths(parent, mutant)?;
    let dim = parent.len();
    if dim == 0 {
        return Err(Error::InvalidConfig("exponential crossover needs dimension >= 1"));
    }
    let start = rng.index(dim);
    let extra = window_extension(dim, cr, rng);
    let mask = exponential_window(dim, start, extra);
    Ok(parent
        .iter()
        .zip(mutant)
        .zip(mask)
        .map(|((&p, &m), take)| if take { m } else { p })
        .collect())
}

pub fn choose_crossover(mix: &CrossoverMix, rng: &mut RngStream) -> CrossoverKind {
    let u = rng.uniform();
    if u < mix.binary {
        CrossoverKind::Binary
    } else if u < mix.binary + mix.exponential {
        CrossoverKind::Exponential
    } else {
        CrossoverKind::None
    }
}

/// True when `candidate` replaces `parent`: `f(candidate) <= f(parent)`.
pub fn candidate_survives(parent: &Individual, candidate: &Individual) -> Result<bool> {
    Ok(candidate.fitness()? <= parent.fitness()?)
}

/// Greedy one-to-one selection; ties go to the candidate.
pub fn select(parent: Individual, candidate: Individual) -> Result<Individual> {
    if candidate_survives(&parent, &candidate)? {
        Ok(candidate)
    } else {
        Ok(parent)
    }
}

/// Everything produced for one member before clamping and evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Proposal {
    pub cr: f64,
    pub guide: usize,
    pub mutant: Vec<f64>,
    pub crossover: CrossoverKind,
    pub trial: Vec<f64>,
}

/// Draw the crossover rate, find the guide, mutate and cross over for member `i`.
pub fn propose(pop: &Population, i: usize, config: &NbdeConfig, rng: &mut RngStream) -> Result<Proposal> {
    let cr = rng.uniform_in(config.cr_low, config.cr_high);
    let guide = nearest_better(pop, i, rng)?;
    let mutant = mutate_nbde_with(pop, i, guide, config.random_term, rng)?;
    let crossover = choose_crossover(&config.crossover_mix, rng);
    let parent = pop.position(i);
    let trial = match crossover {
        CrossoverKind::Binary => crossover_binary(parent, &mutant, cr, rng)?,
        CrossoverKind::Exponential => crossover_exponential(parent, &mutant, cr, rng)?,
        CrossoverKind::None => mutant.clone(),
    };
    Ok(Proposal {
        cr,
        guide,
        mutant,
        crossover,
        trial,
    })
}

struct NbdeVariation<'a>(&'a NbdeConfig);

impl Variation for NbdeVariation<'_> {
    fn trial(&mut self, pop: &Population, i: usize, _best: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
        propose(pop, i, self.0, rng).map(|p| p.trial)
    }
}

/// Evaluate a fresh uniform population, consuming `np` evaluations.
pub fn initialize(config: &NbdeConfig, spec: &ObjectiveSpec, rng: &mut RngStream) -> Result<GenerationState> {
    config.validate()?;
    let mut evaluator = Evaluator::new(spec, config.max_evaluations);
    engine::initialize(config.np, &mut evaluator, rng)
}

/// One generation. Fails with [`Error::BudgetExhausted`] if no evaluations remain.
pub fn step(
    state: GenerationState,
    config: &NbdeConfig,
    spec: &ObjectiveSpec,
    rng: &mut RngStream,
) -> Result<GenerationState> {
    config.validate()?;
    let mut evaluator = Evaluator::resume(spec, state.evaluations_used, config.max_evaluations);
    engine::step_with(state, &mut NbdeVariation(config), &mut evaluator, rng)
}

/// A full run until the evaluation budget is spent.
pub fn run(config: &NbdeConfig, spec: &ObjectiveSpec, seed: u64) -> Result<RunRecord> {
    config.validate()?;
    engine::run_with(
        Algorithm::Nbde,
        config.np,
        config.max_evaluations,
        spec,
        seed,
        &mut NbdeVariation(config),
    )
}
