//! Modularity of a partition.
//!
//! For a partition `A` of a graph with edge set `E`,
//!
//! ```text
//! q = sum_A e(A)/|E|  -  gamma * sum_A vol(A)^2 / (4 |E|^2)
//! ```
//!
//! where the first sum is the edge contribution and the second the degree
//! tax. Loops count once toward `e(A)` and twice toward `vol(A)`; parallel
//! edges count with multiplicity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModularityBreakdown {
    pub edge_contribution: f64,
    pub degree_tax: f64,
    pub q: f64,
    pub gamma: f64,
}

pub fn modularity(g: &Graph, p: &Partition) -> Result<ModularityBreakdown> {
    modularity_with_resolution(g, p, 1.0)
}

pub fn modularity_with_resolution(
    g: &Graph,
    p: &Partition,
    gamma: f64,
) -> Result<ModularityBreakdown> {
    if !(gamma > 0.0) {
        return Err(crate::error::invalid("resolution must be positive"));
    }
    p.check_covers(g)?;
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::UndefinedModularity);
    }
    let mut inside = vec![0usize; p.part_count()];
    let mut vol = vec![0usize; p.part_count()];
    for &(u, v) in g.edges() {
        let (a, b) = (p.part_of(u), p.part_of(v));
        vol[a] += 1;
        vol[b] += 1;
        if a == b {
            inside[a] += 1;
        }
    }
    Ok(breakdown(&inside, &vol, m, gamma))
}

pub(crate) fn breakdown(
    inside: &[usize],
    vol: &[usize],
    m: usize,
    gamma: f64,
) -> ModularityBreakdown {
    let m = m as f64;
    let edge_contribution = inside.iter().sum::<usize>() as f64 / m;
    let degree_tax = vol.iter().map(|&x| (x as f64).powi(2)).sum::<f64>() / (4.0 * m * m);
    ModularityBreakdown {
        edge_contribution,
        degree_tax,
        q: edge_contribution - gamma * degree_tax,
        gamma,
    }
}

/// Modularity of a `d`-regular graph written as a weighted average,
/// `sum_i x_i (y_i/d - x_i)` with `x_i = |A_i|/n` and `y_i = 2 e(A_i)/|A_i|`.
pub fn modularity_regular_form(g: &Graph, p: &Partition) -> Result<f64> {
    p.check_covers(g)?;
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    if d == 0 {
        return Err(Error::UndefinedModularity);
    }
    let n = g.n() as f64;
    let mut size = vec![0usize; p.part_count()];
    for v in 0..g.n() {
        size[p.part_of(v)] += 1;
    }
    let mut inside = vec![0usize; p.part_count()];
    for &(u, v) in g.edges() {
        if p.part_of(u) == p.part_of(v) {
            inside[p.part_of(u)] += 1;
        }
    }
    Ok(size
        .iter()
        .zip(&inside)
        .map(|(&s, &e)| {
            let x = s as f64 / n;
            let y = 2.0 * e as f64 / s as f64;
            x * (y / d as f64 - x)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles(bridge: bool) -> Graph {
        let mut edges = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
        if bridge {
            edges.push((2, 3));
        }
        Graph::from_edges(6, edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn single_part_is_zero() {
        let g = two_triangles(true);
        let b = modularity(&g, &Partition::whole(6)).unwrap();
        assert_eq!(b.edge_contribution, 1.0);
        assert_eq!(b.degree_tax, 1.0);
        assert_eq!(b.q, 0.0);
    }

    #[test]
    fn bridged_triangles() {
        let g = two_triangles(true);
        let p = Partition::from_labels(&[0, 0, 0, 1, 1, 1]);
        let q = modularity(&g, &p).unwrap().q;
        // e(A) = 3, vol(A) = 7 per side, |E| = 7.
        let expected = 2.0 * (3.0 / 7.0 - 49.0 / 196.0);
        assert!((q - expected).abs() < 1e-15);
        assert!((q - 5.0 / 14.0).abs() < 1e-15);
    }

    #[test]
    fn four_cycle_opposite_edges() {
        let g = cycle(4);
        let p = Partition::from_labels(&[0, 0, 1, 1]);
        assert!(modularity(&g, &p).unwrap().q.abs() < 1e-15);
        assert!(modularity_regular_form(&g, &p).unwrap().abs() < 1e-15);
    }

    #[test]
    fn k4_two_pairs() {
        let g = complete(4);
        let p = Partition::from_labels(&[0, 0, 1, 1]);
        // e(A) = 1 each, vol(A) = 6 each, |E| = 6: 2 (1/6 - 36/144) = -1/6.
        assert!((modularity(&g, &p).unwrap().q + 1.0 / 6.0).abs() < 1e-15);
        assert!((modularity_regular_form(&g, &p).unwrap() + 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn resolution_scales_tax() {
        let g = two_triangles(true);
        let p = Partition::from_labels(&[0, 0, 0, 1, 1, 1]);
        let b = modularity_with_resolution(&g, &p, 2.0).unwrap();
        assert!((b.q - (b.edge_contribution - 2.0 * b.degree_tax)).abs() < 1e-15);
        assert!(modularity_with_resolution(&g, &p, 0.0).is_err());
    }

    #[test]
    fn loop_counts_once_inside() {
        let g = Graph::from_edges(2, vec![(0, 0), (0, 1)]).unwrap();
        let p = Partition::from_labels(&[0, 1]);
        let b = modularity(&g, &p).unwrap();
        assert_eq!(b.edge_contribution, 0.5);
        assert!((b.degree_tax - (9.0 + 1.0) / 16.0).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        let g = Graph::new(3);
        assert!(matches!(
            modularity(&g, &Partition::whole(3)),
            Err(Error::UndefinedModularity)
        ));
        let path = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            modularity_regular_form(&path, &Partition::whole(3)),
            Err(Error::NotRegular)
        ));
        assert!(modularity(&path, &Partition::whole(2)).is_err());
    }
}
