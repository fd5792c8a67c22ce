//! The nine-function analytic benchmark suite.
//!
//! | id | function        | box                | optimum               |
//! |----|-----------------|--------------------|-----------------------|
//! | F1 | Zakharov        | [-100, 100]^D      | 0                     |
//! | F2 | Schwefel 2.22   | [-10, 10]^D        | 0                     |
//! | F3 | Schwefel 2.21   | [-100, 100]^D      | 0                     |
//! | F4 | Rosenbrock      | [-30, 30]^D        | 0                     |
//! | F5 | Noisy quartic   | [-1.28, 1.28]^D    | 0                     |
//! | F6 | Schwefel 2.26   | [-500, 500]^D      | -418.9828872724339·D  |
//! | F7 | Rastrigin       | [-5.12, 5.12]^D    | 0                     |
//! | F8 | Ackley          | [-32, 32]^D        | 0                     |
//! | F9 | Griewank        | [-600, 600]^D      | 0                     |
//!
//! Sums and products over `i` use 1-based indices.

use alloc::vec::Vec;
use core::f64::consts::{E, PI};
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::population::Bounds;
use crate::rng::RngStream;

/// Per-dimension optimum of Schwefel 2.26.
pub const SCHWEFEL_226_OPTIMUM_PER_DIM: f64 = -418.982_887_272_433_9;
/// Approximate minimizer coordinate of Schwefel 2.26.
pub const SCHWEFEL_226_MINIMIZER: f64 = 420.968_746;

const VTR_NOISY: f64 = 1e-2;
const VTR_DEFAULT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctionId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
}

impl FunctionId {
    pub const ALL: [FunctionId; 9] = [
        FunctionId::F1,
        FunctionId::F2,
        FunctionId::F3,
        FunctionId::F4,
        FunctionId::F5,
        FunctionId::F6,
        FunctionId::F7,
        FunctionId::F8,
        FunctionId::F9,
    ];

    /// 1-based number, so `F7.number() == 7`.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.get(usize::from(n).checked_sub(1)?).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            FunctionId::F1 => "Zakharov",
            FunctionId::F2 => "Schwefel 2.22",
            FunctionId::F3 => "Schwefel 2.21",
            FunctionId::F4 => "Rosenbrock",
            FunctionId::F5 => "Noise Quartic",
            FunctionId::F6 => "Schwefel 2.26",
            FunctionId::F7 => "Rastrigin",
            FunctionId::F8 => "Ackley",
            FunctionId::F9 => "Griewank",
        }
    }

    fn half_width(self) -> f64 {
        match self {
            FunctionId::F1 | FunctionId::F3 => 100.0,
            FunctionId::F2 => 10.0,
            FunctionId::F4 => 30.0,
            FunctionId::F5 => 1.28,
            FunctionId::F6 => 500.0,
            FunctionId::F7 => 5.12,
            FunctionId::F8 => 32.0,
            FunctionId::F9 => 600.0,
        }
    }

    /// A known global minimizer in `dim` dimensions.
    pub fn minimizer(self, dim: usize) -> Vec<f64> {
        let coord = match self {
            FunctionId::F4 => 1.0,
            FunctionId::F6 => SCHWEFEL_226_MINIMIZER,
            _ => 0.0,
        };
        alloc::vec![coord; dim]
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.number())
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix(['F', 'f'])
            .and_then(|n| n.parse::<u8>().ok())
            .and_then(FunctionId::from_number)
            .ok_or(Error::InvalidConfig("unknown function id (expected F1..F9)"))
    }
}

/// One benchmark problem: function, dimension, box, optimum and success threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    pub id: FunctionId,
    pub dimension: usize,
    pub bounds: Bounds,
    pub optimum_value: f64,
    pub vtr: f64,
    pub noisy: bool,
}

impl ObjectiveSpec {
    pub fn new(id: FunctionId, dimension: usize) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::InvalidConfig("benchmark dimension must be at least 2"));
        }
        let w = id.half_width();
        let noisy = id == FunctionId::F5;
        Ok(Self {
            id,
            dimension,
            bounds: Bounds::cube(-w, w, dimension)?,
            optimum_value: if id == FunctionId::F6 {
                SCHWEFEL_226_OPTIMUM_PER_DIM * dimension as f64
            } else {
                0.0
            },
            vtr: if noisy { VTR_NOISY } else { VTR_DEFAULT },
            noisy,
        })
    }

    pub fn name(&self) -> &'static str {
        self.id.name()
    }

    /// Replace the value-to-reach threshold.
    pub fn with_vtr(mut self, vtr: f64) -> Result<Self> {
        if !(vtr > 0.0) {
            return Err(Error::InvalidConfig("value-to-reach must be positive"));
        }
        self.vtr = vtr;
        Ok(self)
    }

    /// Objective value at `x`. Only F5 consumes draws from `rng`.
    pub fn evaluate(&self, x: &[f64], rng: &mut RngStream) -> Result<f64> {
        if x.len() != self.dimension {
            return Err(Error::Dimension {
                expected: self.dimension,
                actual: x.len(),
            });
        }
        let (lo, hi) = (self.bounds.lower(), self.bounds.upper());
        for (dim, &value) in x.iter().enumerate() {
            if !(lo[dim] <= value && value <= hi[dim]) {
                return Err(Error::Domain {
                    dim,
                    value,
                    lower: lo[dim],
                    upper: hi[dim],
                });
            }
        }
        Ok(match self.id {
            FunctionId::F1 => zakharov(x),
            FunctionId::F2 => schwefel_222(x),
            FunctionId::F3 => schwefel_221(x),
            FunctionId::F4 => rosenbrock(x),
            FunctionId::F5 => quartic(x) + rng.uniform(),
            FunctionId::F6 => schwefel_226(x),
            FunctionId::F7 => rastrigin(x),
            FunctionId::F8 => ackley(x),
            FunctionId::F9 => griewank(x),
        })
    }
}

/// All nine problems in dimension `d`, ordered F1..F9.
pub fn make_suite(d: usize) -> Result<Vec<ObjectiveSpec>> {
    FunctionId::ALL
        .iter()
        .map(|&id| ObjectiveSpec::new(id, d))
        .collect()
}

fn zakharov(x: &[f64]) -> f64 {
    let squares: f64 = x.iter().map(|v| v * v).sum();
    let weighted: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| 0.5 * (i + 1) as f64 * v)
        .sum();
    let w2 = weighted * weighted;
    squares + w2 + w2 * w2
}

fn schwefel_222(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| libm::fabs(*v)).sum();
    let prod: f64 = x.iter().map(|v| libm::fabs(*v)).product();
    sum + prod
}

fn schwefel_221(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(libm::fabs(*v)))
}

fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let a = w[1] - w[0] * w[0];
            let b = w[0] - 1.0;
            100.0 * a * a + b * b
        })
        .sum()
}

fn quartic(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| {
            let v2 = v * v;
            (i + 1) as f64 * v2 * v2
        })
        .sum()
}

fn schwefel_226(x: &[f64]) -> f64 {
    -x.iter()
        .map(|v| v * libm::sin(libm::sqrt(libm::fabs(*v))))
        .sum::<f64>()
}

fn rastrigin(x: &[f64]) -> f64 {
    x.iter()
        .map(|v| v * v - 10.0 * libm::cos(2.0 * PI * v) + 10.0)
        .sum()
}

fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq: f64 = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cs: f64 = x.iter().map(|v| libm::cos(2.0 * PI * v)).sum::<f64>() / n;
    -20.0 * libm::exp(-0.2 * libm::sqrt(sq)) - libm::exp(cs) + 20.0 + E
}

fn griewank(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| libm::cos(v / libm::sqrt((i + 1) as f64)))
        .product();
    sum - prod + 1.0
}

/// One objective call's result and its 1-based position within the run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub evaluation_index: u64,
}

/// Budgeted, counting wrapper around an [`ObjectiveSpec`].
#[derive(Debug, Clone)]
pub struct Evaluator<'a> {
    spec: &'a ObjectiveSpec,
    used: u64,
    max: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(spec: &'a ObjectiveSpec, max_evaluations: u64) -> Self {
        Self {
            spec,
            used: 0,
            max: max_evaluations,
        }
    }

    /// Continue counting from `used` evaluations already spent.
    pub fn resume(spec: &'a ObjectiveSpec, used: u64, max_evaluations: u64) -> Self {
        Self {
            spec,
            used,
            max: max_evaluations,
        }
    }

    pub fn spec(&self) -> &'a ObjectiveSpec {
        self.spec
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    pub fn remaining(&self) -> u64 {
        self.max.saturating_sub(self.used)
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.max
    }

    pub fn evaluate(&mut self, x: &[f64], rng: &mut RngStream) -> Result<Evaluation> {
        if self.exhausted() {
            return Err(Error::BudgetExhausted(self.max));
        }
        let value = self.spec.evaluate(x, rng)?;
        self.used += 1;
        Ok(Evaluation {
            value,
            evaluation_index: self.used,
        })
    }
}
