use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::rng::{seeded, SeededRng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PaParams {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

/// The Bollobás–Riordan preferential attachment process `G_m^t`.
///
/// Runs the one-edge process on `m n` sub-vertices and identifies each
/// consecutive block of `m` sub-vertices into one vertex. At sub-step `t'`
/// the new edge goes to the current sub-vertex itself with probability
/// `1/(2t'-1)` and otherwise to an existing endpoint drawn uniformly from the
/// flat endpoint list, which selects a vertex with probability proportional
/// to its degree.
pub struct PaProcess {
    m: usize,
    rng: SeededRng,
    endpoints: Vec<usize>,
    edges: Vec<(usize, usize)>,
    degree: Vec<usize>,
}

impl PaProcess {
    pub fn new(m: usize, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(invalid("m must be at least 1"));
        }
        Ok(Self {
            m,
            rng: seeded(seed),
            endpoints: Vec::new(),
            edges: Vec::new(),
            degree: Vec::new(),
        })
    }

    pub fn with_capacity(m: usize, seed: u64, n: usize) -> Result<Self> {
        let mut p = Self::new(m, seed)?;
        p.endpoints.reserve(2 * m * n);
        p.edges.reserve(m * n);
        p.degree.reserve(n);
        Ok(p)
    }

    /// Number of vertices added so far.
    pub fn len(&self) -> usize {
        self.degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degree.is_empty()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    /// Adds the next vertex with its `m` edges and returns those edges as
    /// `(new vertex, target)`.
    pub fn step(&mut self) -> &[(usize, usize)] {
        let v = self.degree.len();
        self.degree.push(0);
        let first = self.edges.len();
        for _ in 0..self.m {
            // Sub-step t' = edges so far + 1; 2t' - 1 = endpoints + 1 slots.
            let slots = self.endpoints.len() + 1;
            let r = self.rng.random_range(0..slots);
            let target = if r + 1 == slots { v } else { self.endpoints[r] };
            self.edges.push((v, target));
            self.endpoints.push(v);
            self.endpoints.push(target);
            self.degree[v] += 1;
            self.degree[target] += 1;
        }
        &self.edges[first..]
    }

    pub fn into_graph(self) -> Graph {
        let n = self.degree.len();
        Graph::from_edges(n, self.edges)
            .expect("targets are existing vertices")
            .with_orientation(true)
    }
}

/// Samples `G_m^n`; edges are in creation order, stored `(younger, older)`.
pub fn gen_pa(params: &PaParams) -> Result<Graph> {
    let mut process = PaProcess::with_capacity(params.m, params.seed, params.n)?;
    for _ in 0..params.n {
        process.step();
    }
    Ok(process.into_graph())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_vertex_has_only_loops() {
        for m in 1..6 {
            let g = gen_pa(&PaParams { n: 1, m, seed: 9 }).unwrap();
            assert_eq!(g.edge_count(), m);
            assert!(g.edges().iter().all(|&(u, v)| u == 0 && v == 0));
            assert_eq!(g.degrees(), vec![2 * m]);
        }
    }

    #[test]
    fn edge_count_and_orientation() {
        let g = gen_pa(&PaParams {
            n: 500,
            m: 3,
            seed: 1,
        })
        .unwrap();
        assert_eq!(g.edge_count(), 1500);
        assert_eq!(g.degrees().iter().sum::<usize>(), 3000);
        assert!(g.is_oriented());
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            assert_eq!(u, i / 3);
            assert!(v <= u);
        }
    }

    #[test]
    fn m1_is_a_forest_plus_one_loop_per_component() {
        let g = gen_pa(&PaParams {
            n: 2000,
            m: 1,
            seed: 4,
        })
        .unwrap();
        let loops = g.edges().iter().filter(|&&(u, v)| u == v).count();
        assert_eq!(loops, g.component_count());
    }

    #[test]
    fn zero_m_is_rejected() {
        assert!(gen_pa(&PaParams {
            n: 3,
            m: 0,
            seed: 0
        })
        .is_err());
    }

    #[test]
    fn second_vertex_distribution() {
        // m = 1, t = 2: P(loop) = 1/3, P(attach to v1) = 2/3.
        let trials = 30_000;
        let loops = (0..trials)
            .filter(|&s| {
                let g = gen_pa(&PaParams {
                    n: 2,
                    m: 1,
                    seed: s,
                })
                .unwrap();
                g.edges()[1] == (1, 1)
            })
            .count();
        let f = loops as f64 / trials as f64;
        let sigma = (1.0 / 3.0 * 2.0 / 3.0 / trials as f64).sqrt();
        assert!((f - 1.0 / 3.0).abs() < 4.0 * sigma, "loop fraction {f}");
    }
}
