use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::rng::{seeded, SeededRng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularParams {
    pub n: usize,
    pub d: usize,
    pub require_simple: bool,
    pub seed: u64,
    /// Attempts before giving up when `require_simple` is set.
    pub max_retries: usize,
}

impl RegularParams {
    pub fn new(n: usize, d: usize, seed: u64) -> Self {
        Self {
            n,
            d,
            require_simple: false,
            seed,
            max_retries: 100_000,
        }
    }

    pub fn simple(mut self) -> Self {
        self.require_simple = true;
        self
    }
}

/// Pairing (configuration) model: `d n` points in `n` buckets of `d`, a
/// uniformly random perfect matching on the points, projected onto buckets.
///
/// With `require_simple`, pairings are redrawn until the projection has no
/// loops or parallel edges, which makes the output uniform over simple
/// `d`-regular graphs.
pub fn gen_pairing(params: &RegularParams) -> Result<Graph> {
    let RegularParams { n, d, .. } = *params;
    if d == 0 {
        return Err(invalid("degree must be at least 1"));
    }
    if (n * d) % 2 == 1 {
        return Err(invalid(format!("d n = {} is odd", n * d)));
    }
    let mut rng = seeded(params.seed);
    let mut points: Vec<usize> = (0..n * d).map(|p| p / d).collect();
    let attempts = if params.require_simple {
        params.max_retries.max(1)
    } else {
        1
    };
    for _ in 0..attempts {
        let g = one_pairing(n, &mut points, &mut rng);
        if !params.require_simple || g.is_simple() {
            return Ok(g);
        }
    }
    Err(Error::RetryLimit(attempts))
}

fn one_pairing(n: usize, points: &mut [usize], rng: &mut SeededRng) -> Graph {
    points.shuffle(rng);
    let edges = points
        .chunks_exact(2)
        .map(|pair| (pair[0], pair[1]))
        .collect();
    Graph::from_edges(n, edges).expect("buckets are < n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_is_forced() {
        for seed in 0..10 {
            let g = gen_pairing(&RegularParams::new(2, 1, seed)).unwrap();
            assert_eq!(g.edge_count(), 1);
            let (u, v) = g.edges()[0];
            assert_eq!((u.min(v), u.max(v)), (0, 1));
        }
    }

    #[test]
    fn every_vertex_has_degree_d() {
        for seed in 0..20 {
            let g = gen_pairing(&RegularParams::new(31, 4, seed)).unwrap();
            assert_eq!(g.regular_degree(), Some(4));
        }
    }

    #[test]
    fn odd_point_count_is_rejected() {
        assert!(gen_pairing(&RegularParams::new(5, 3, 0)).is_err());
        assert!(gen_pairing(&RegularParams::new(5, 0, 0)).is_err());
    }

    #[test]
    fn simple_k4_is_only_outcome() {
        for seed in 0..30 {
            let g = gen_pairing(&RegularParams::new(4, 3, seed).simple()).unwrap();
            assert!(g.is_simple());
            assert_eq!(g.edge_count(), 6);
        }
    }

    #[test]
    fn retry_cap_surfaces() {
        // A simple 3-regular graph on 2 vertices does not exist.
        let mut p = RegularParams::new(2, 3, 0).simple();
        p.max_retries = 5;
        assert!(matches!(gen_pairing(&p), Err(Error::RetryLimit(5))));
    }

    #[test]
    fn same_seed_same_graph() {
        let p = RegularParams::new(100, 3, 42);
        assert_eq!(gen_pairing(&p).unwrap(), gen_pairing(&p).unwrap());
    }
}
