//! Exponential ground-truth solvers for small instances.

pub mod cover;
pub mod search;

pub use crate::instances::manhattan::weighted_distance;
pub use cover::{gzero_family, hansel_verify, min_set_cover, BipartiteCoverFamily, HanselReport};
pub use search::{
    candidate_edges, min_branching_das, min_branching_dps, min_branching_exhaustive, OracleResult, SearchBudget,
};
