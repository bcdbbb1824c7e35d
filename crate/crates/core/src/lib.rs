//! Distance-preserving and distance-approximating subgraphs of interval
//! graphs with terminals, plus instance generators and exhaustive oracles.

pub mod das;
pub mod dps;
pub mod error;
pub mod experiment;
pub mod facts;
pub mod graph;
pub mod instance;
pub mod instances;
pub mod interval;
pub mod io;
pub mod oracle;
pub mod subgraph;

pub use error::{Error, Result};
pub use graph::{Graph, PlainGraph};
pub use instance::{build_instance, Instance, Path};
pub use interval::{coord, Coord, Interval};
pub use subgraph::{verify_approx, verify_preserving, Subgraph, VerificationReport, Violation};
