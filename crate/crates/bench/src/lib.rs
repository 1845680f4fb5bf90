//! Experiment harness for comparing the two NSGA-II crowding modes.
//!
//! [`experiment::run_experiment`] executes paired runs (both modes from the
//! same seed), scores each final non-dominated set with GD, SP and M2*,
//! computes the coverage metric in both directions for every pair, and
//! persists records and sets under an output root. [`report::summarize`]
//! aggregates records into the four comparison tables, and
//! [`acceptance`] holds the suite behind `moea-bench verify`.

pub mod acceptance;
pub mod cli;
pub mod config;
pub mod experiment;
pub mod oracles;
pub mod records;
pub mod report;
pub mod stats;

mod error;

pub use config::ExperimentConfig;
pub use error::{HarnessError, Result};
pub use experiment::run_experiment;
pub use records::{Layout, PairedRecord, Records, RunRecord};
pub use report::{summarize, Summary};
