//! Individuals, search boxes, populations and the nearest-better neighbor rule.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// A position in the search space and, once evaluated, its objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub position: Vec<f64>,
    pub fitness: Option<f64>,
}

impl Individual {
    pub fn new(position: Vec<f64>) -> Self {
        Self {
            position,
            fitness: None,
        }
    }

    pub fn evaluated(position: Vec<f64>, fitness: f64) -> Self {
        Self {
            position,
            fitness: Some(fitness),
        }
    }

    pub fn dim(&self) -> usize {
        self.position.len()
    }

    pub fn fitness(&self) -> Result<f64> {
        self.fitness
            .ok_or(Error::Protocol("individual has not been evaluated"))
    }
}

/// Axis-aligned search box with `lower[j] < upper[j]` in every dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Dimension {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::InvalidConfig("bounds must have at least one dimension"));
        }
        for (dim, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            // also rejects NaN
            if !(lo < hi) {
                return Err(Error::InvalidBounds {
                    dim,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Self { lower, upper })
    }

    /// The hypercube `[lower, upper]^dim`.
    pub fn cube(lower: f64, upper: f64, dim: usize) -> Result<Self> {
        Self::new(alloc::vec![lower; dim], alloc::vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, position: &[f64]) -> bool {
        position.len() == self.dim()
            && position
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&x, (&lo, &hi))| lo <= x && x <= hi)
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.dim() {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.dim(),
                actual: len,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
    pub generation: u64,
}

impl Population {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members.first().map_or(0, Individual::dim)
    }

    pub fn position(&self, i: usize) -> &[f64] {
        &self.members[i].position
    }

    /// Fitness values of every member, failing if any is unevaluated.
    pub fn fitnesses(&self) -> Result<Vec<f64>> {
        self.members.iter().map(Individual::fitness).collect()
    }

    /// Index of the minimum-fitness member, lowest index on ties.
    pub fn best_index(&self) -> Result<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (k, m) in self.members.iter().enumerate() {
            let f = m.fitness()?;
            match best {
                Some((_, bf)) if !(f < bf) => {}
                _ => best = Some((k, f)),
            }
        }
        best.map(|(k, _)| k)
            .ok_or(Error::InvalidConfig("population is empty"))
    }
}

/// `np` individuals drawn coordinate-wise uniformly from `bounds`.
pub fn uniform_init(bounds: &Bounds, np: usize, rng: &mut RngStream) -> Result<Population> {
    if np < 4 {
        return Err(Error::InvalidConfig("population size must be at least 4"));
    }
    let members = (0..np)
        .map(|_| {
            let position = bounds
                .lower
                .iter()
                .zip(&bounds.upper)
                .map(|(&lo, &hi)| rng.uniform_in(lo, hi))
                .collect();
            Individual::new(position)
        })
        .collect();
    Ok(Population {
        members,
        generation: 0,
    })
}

pub fn clamp_to_bounds(position: &[f64], bounds: &Bounds) -> Result<Vec<f64>> {
    bounds.check_dim(position.len())?;
    Ok(position
        .iter()
        .zip(bounds.lower.iter().zip(&bounds.upper))
        .map(|(&x, (&lo, &hi))| hi.min(lo.max(x)))
        .collect())
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(libm::sqrt(squared_distance(a, b)))
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Closest member (Euclidean) whose fitness is strictly better than member
/// `i`'s. Distance ties go to the lowest index. When no member is strictly
/// better, a uniformly random index other than `i` is returned instead.
pub fn nearest_better(pop: &Population, i: usize, rng: &mut RngStream) -> Result<usize> {
    if pop.len() < 2 {
        return Err(Error::InvalidConfig("nearest-better search needs at least 2 members"));
    }
    if i >= pop.len() {
        return Err(Error::Protocol("member index out of range"));
    }
    let own = pop.members[i].fitness()?;
    let here = pop.position(i);
    let mut nearest: Option<(usize, f64)> = None;
    for (k, m) in pop.members.iter().enumerate() {
        let f = m.fitness()?;
        if k == i || !(f < own) {
            continue;
        }
        // squared distance preserves the ordering
        let d = squared_distance(here, &m.position);
        match nearest {
            Some((_, nd)) if !(d < nd) => {}
            _ => nearest = Some((k, d)),
        }
    }
    match nearest {
        Some((k, _)) => Ok(k),
        None => Ok(rng
            .index_excluding(pop.len(), &[i])
            .expect("population has at least two members")),
    }
}
