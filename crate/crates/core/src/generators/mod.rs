//! Random graph samplers.

mod pa;
mod pairing;
mod spa;

pub use pa::{gen_pa, PaParams, PaProcess};
pub use pairing::{gen_pairing, RegularParams};
pub use spa::{
    ball_volume_at, gen_spa, gen_spa_naive, sphere_volume, torus_distance, undirect, Norm,
    SpaGraph, SpaParams,
};
