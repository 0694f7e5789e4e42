//! Asymptotic-dimension covers of graphs: annulus decompositions, chain
//! partitions, cactus and planar cover builders, a cover verifier, and a
//! search for fat theta subgraphs.

pub mod cli;
pub mod covers;
pub mod decomposition;
mod dsu;
pub mod error;
pub mod generators;
pub mod graph;
pub mod metric;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, VertexId};
pub use metric::{MetricMode, Subspace};
