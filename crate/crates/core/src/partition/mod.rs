//! Constructive partitions.

mod majority;
mod refine;
mod strips;
mod tree;

pub use majority::{majority_color_pa, majority_colouring, Colouring, TieRule};
pub use refine::local_search_refine;
pub use strips::{best_strip_partition, default_omega, strip_partition};
pub use tree::{
    bfs_spanning_tree, centroid_edge, decompose_connected, partition_avg_degree, partition_forest,
};
