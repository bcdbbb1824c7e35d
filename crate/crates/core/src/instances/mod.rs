//! Instance generators and bit-string machinery.

pub mod bits;
pub mod families;
pub mod manhattan;
pub mod random;

pub use bits::{hypercube_edges, lca_triple, rev, BitString, Lca};
pub use families::{gen_gset, gen_gzero, gen_hard, GsetLayout, GzeroLayout, SetCoverInstance};
pub use manhattan::{gen_gint, gen_manhattan, slant_transform, weighted_distance, EdgeKind, WeightedDigraph};
pub use random::{gen_random, Flavor};
