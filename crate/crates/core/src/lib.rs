//! Differential evolution with a nearest-and-better guidance vector (NbDE),
//! the classic DE/WSA comparison optimizers, the nine-function benchmark
//! suite and the success-rate / ranking statistics used to compare them.
//!
//! The crate is `no_std` and only needs `alloc`. File IO, parallel
//! execution and the command-line frontend live in the `nbde` crate.
#![cfg_attr(not(test), no_std)]
// `!(a < b)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod baselines;
pub mod benchmarks;
mod engine;
pub mod error;
pub mod harness;
pub mod nbde;
pub mod population;
pub mod rng;

pub use baselines::{BaselineAlgorithm, BaselineConfig};
pub use benchmarks::{make_suite, Evaluation, Evaluator, FunctionId, ObjectiveSpec};
pub use engine::{GenerationState, RunRecord, TracePoint};
pub use error::{Error, Result};
pub use harness::{Algorithm, AlgorithmConfig, ExperimentPlan, SummaryTable};
pub use nbde::{CrossoverKind, CrossoverMix, NbdeConfig, RandomTerm};
pub use population::{Bounds, Individual, Population};
pub use rng::RngStream;
