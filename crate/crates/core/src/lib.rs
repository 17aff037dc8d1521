//! Random graph models, constructive partitions and modularity bounds.

pub mod bounds;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod modularity;
pub mod oracle;
pub mod partition;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Adjacency, Graph, Partition};
pub use modularity::{
    modularity, modularity_regular_form, modularity_with_resolution, ModularityBreakdown,
};
