//! Std companion to `nbde-core`: parallel experiment execution, the run
//! record / summary / trace file formats, atomic output and the CLI.

pub mod cli;
pub mod formats;
pub mod output;
pub mod runner;

pub use runner::run_experiment;
