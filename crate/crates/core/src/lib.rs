//! Multi-objective evolutionary optimization with NSGA-II.
//!
//! The engine supports two crowding-distance definitions that differ only in
//! the per-objective accumulation term:
//!
//! * [`CrowdingMode::Initial`] adds the normalized gap between an
//!   individual's two sort-neighbors, `(f[n+1] - f[n-1]) / (f_max - f_min)`.
//! * [`CrowdingMode::Improved`] adds the normalized gap between the
//!   individual itself and its upper neighbor, `(f[n+1] - f[n]) / (f_max - f_min)`,
//!   so that points closer to the ideal corner of their neighbor box rank
//!   higher.
//!
//! Around the engine sit the nine classic two-objective benchmarks
//! ([`benchmarks`]), reference-front generation, and four quality indicators
//! ([`indicators`]): generational distance, binary coverage, spacing and
//! niche count.
//!
//! All objectives are minimized.

pub mod benchmarks;
pub mod dominance;
mod error;
pub mod indicators;
pub mod nsga2;
pub mod operators;
pub mod pointfile;
mod rng;
mod types;

pub use benchmarks::{Bounds, Problem, ProblemKind, ReferenceFront};
pub use dominance::{dominates, weakly_dominates};
pub use error::{Error, Result};
pub use indicators::{IndicatorConfig, SolutionSet};
pub use nsga2::{CrowdingMode, Nsga2, RankPartition};
pub use operators::VariationConfig;
pub use rng::RngStream;
pub use types::{evaluate, DecisionVector, Individual, ObjectiveVector, Population};
