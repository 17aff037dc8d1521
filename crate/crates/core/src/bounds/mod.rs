//! Theoretical modularity bounds.

mod general;
mod pa;
mod regular;
mod table;

pub use general::{avg_degree_lower, forest_lower, spa_rate};
pub use pa::{mihail_expansion_lower, pa_lower_l1, pa_lower_l2, pa_upper};
pub use regular::{
    eta, f_reg, friedman_upper, restricted_upper, spectral_upper, trivial_upper, u1, u2, u3,
    u3_argmax, u4, y_bar,
};
pub use table::{bound_table, write_bound_csv, BoundTable, Parameter};
