//! Benchmark problems and their reference Pareto fronts.
//!
//! | name | n  | bounds                         |
//! |------|----|--------------------------------|
//! | SCH  | 1  | [-1000, 1000]                  |
//! | FON  | 3  | [-4, 4]                        |
//! | POL  | 2  | [-pi, pi]                      |
//! | KUR  | 3  | [-5, 5]                        |
//! | ZDT1 | 30 | [0, 1]                         |
//! | ZDT2 | 30 | [0, 1]                         |
//! | ZDT3 | 30 | [0, 1]                         |
//! | ZDT4 | 10 | x1 in [0, 1], others [-5, 5]   |
//! | ZDT6 | 10 | [0, 1]                         |

mod fronts;
mod problems;

pub use fronts::{
    front_path, front_source, reference_front, reference_front_cached, zdt6_min_f1, FrontSource,
    ReferenceFront, DEFAULT_FRONT_COUNT, GRID_SAMPLES,
};
pub use problems::{evaluate_problem, Bounds, Problem, ProblemKind};
