//! NSGA-II: non-dominated sorting, crowding distance, environmental
//! selection and the generation loop.

mod crowding;
mod engine;
mod selection;
mod sort;

pub use crowding::{crowding_distances, crowding_improved, crowding_initial, CrowdingMode, Normalization};
pub use engine::{run, History, Nsga2, Observer};
pub use selection::{assign_ranks, environmental_select};
pub use sort::{fast_nondominated_sort, RankPartition};
