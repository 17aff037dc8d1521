//! Greedy single-vertex moves.

use rand::seq::SliceRandom;

use crate::error::{invalid, Result};
use crate::graph::{Graph, Partition};
use crate::rng::seeded;

/// Moves smaller than this are treated as no improvement.
const MIN_GAIN: f64 = 1e-12;

/// Passes over the vertices in seeded random order. Each vertex moves to the
/// neighbouring part with the largest gain in (resolution `gamma`)
/// modularity, provided the gain is positive. Stops after `max_passes` or a
/// pass without moves.
pub fn local_search_refine(
    g: &Graph,
    p: &Partition,
    max_passes: usize,
    gamma: f64,
    seed: u64,
) -> Result<Partition> {
    if p.len() != g.n() {
        return Err(crate::error::Error::PartitionMismatch {
            expected: g.n(),
            got: p.len(),
        });
    }
    if !(gamma > 0.0) {
        return Err(invalid("resolution must be positive"));
    }
    let m = g.edge_count() as f64;
    if m == 0.0 {
        return Ok(p.clone());
    }
    let adj = g.adjacency();
    let deg = g.degrees();
    let mut label = p.assignment().to_vec();
    let mut vol = vec![0.0; g.n().max(p.part_count())];
    for v in 0..g.n() {
        vol[label[v]] += deg[v] as f64;
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    let mut rng = seeded(seed);
    // links[part] = edges from the current vertex into `part`.
    let mut links = vec![0.0; vol.len()];
    let mut touched = Vec::new();
    for _ in 0..max_passes {
        order.shuffle(&mut rng);
        let mut moved = false;
        for &v in &order {
            let own = label[v];
            for &w in adj.neighbors(v) {
                if w != v {
                    if links[label[w]] == 0.0 {
                        touched.push(label[w]);
                    }
                    links[label[w]] += 1.0;
                }
            }
            let dv = deg[v] as f64;
            let mut best = (MIN_GAIN, own);
            for &b in &touched {
                if b == own {
                    continue;
                }
                let gain = (links[b] - links[own]) / m
                    - gamma * dv * (vol[b] - vol[own] + dv) / (2.0 * m * m);
                if gain > best.0 || (gain == best.0 && b < best.1 && best.1 != own) {
                    best = (gain, b);
                }
            }
            for &b in &touched {
                links[b] = 0.0;
            }
            links[own] = 0.0;
            touched.clear();
            if best.1 != own {
                vol[own] -= dv;
                vol[best.1] += dv;
                label[v] = best.1;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    Ok(Partition::from_labels(&label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modularity::modularity;
    use rand::Rng;

    fn bridged_triangles() -> Graph {
        Graph::from_edges(
            6,
            vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn optimum_is_fixed() {
        let g = bridged_triangles();
        let p = Partition::from_labels(&[0, 0, 0, 1, 1, 1]);
        assert_eq!(local_search_refine(&g, &p, 10, 1.0, 0).unwrap(), p);
    }

    #[test]
    fn reaches_optimum_from_random_colourings() {
        let g = bridged_triangles();
        let mut hits = 0;
        for seed in 0..100 {
            let mut rng = seeded(seed + 1000);
            let labels: Vec<usize> = (0..6).map(|_| rng.random_range(0..2)).collect();
            let start = Partition::from_labels(&labels);
            let out = local_search_refine(&g, &start, 50, 1.0, seed).unwrap();
            let q = modularity(&g, &out).unwrap().q;
            assert!(q >= modularity(&g, &start).unwrap().q - 1e-12);
            if (q - 5.0 / 14.0).abs() < 1e-12 {
                hits += 1;
            }
        }
        // Starts such as [0, 1, 1, 1, 1, 1] improve by merging everything,
        // and [0, 0, 1, 1, 0, 0] is a local optimum; 80 of these 100 starts
        // reach the optimum.
        assert!(hits >= 75, "{hits}");
    }

    #[test]
    fn gain_matches_recomputed_modularity() {
        // A single move on K4 plus a pendant vertex.
        let g = Graph::from_edges(
            5,
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)],
        )
        .unwrap();
        let start = Partition::from_labels(&[0, 0, 0, 1, 1]);
        let out = local_search_refine(&g, &start, 1, 1.0, 0).unwrap();
        assert!(modularity(&g, &out).unwrap().q >= modularity(&g, &start).unwrap().q);
    }
}
