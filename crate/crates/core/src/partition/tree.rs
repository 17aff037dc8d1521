//! Tree-based partitions: centroid edges, connected decomposition into parts
//! of bounded volume, and the forest and average-degree constructions built
//! on it.

use std::collections::{BinaryHeap, VecDeque};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Partition};

/// Index (into `tree.edges()`) of an edge maximizing
/// `min(vol(T1), vol(T2))` over the two sides of `tree - e`, where `vol` sums
/// the given per-vertex volumes. Ties go to the smallest index.
pub fn centroid_edge(tree: &Graph, volumes: &[usize]) -> Result<usize> {
    if tree.edge_count() == 0 {
        return Err(invalid("centroid edge of an edgeless tree"));
    }
    if volumes.len() != tree.n() {
        return Err(invalid("one volume per vertex is required"));
    }
    if !tree.is_forest() {
        return Err(Error::NotAForest);
    }
    if !tree.is_connected() {
        return Err(Error::Disconnected);
    }
    let forest = Forest::new(tree.n(), tree.edges().iter().copied().enumerate());
    let split = forest.best_split(0, volumes);
    Ok(split.expect("a tree with an edge has a split").edge)
}

/// Spanning tree of a connected graph found by breadth-first search from
/// vertex 0, returned as indices into `g.edges()`.
pub fn bfs_spanning_tree(g: &Graph) -> Result<Vec<usize>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut incident = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if u != v {
            incident[u].push((v, i));
            incident[v].push((u, i));
        }
    }
    let mut seen = vec![false; n];
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    let mut queue = VecDeque::new();
    if n > 0 {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(u) = queue.pop_front() {
        for &(v, i) in &incident[u] {
            if !seen[v] {
                seen[v] = true;
                tree.push(i);
                queue.push_back(v);
            }
        }
    }
    Ok(tree)
}

/// Splits a connected graph into connected parts of volume at most `h`.
///
/// Takes the breadth-first spanning tree and, while some component has
/// `vol_G > h`, removes its centroid edge. Every part then has volume at most
/// `h`, and at least `h/Δ - 1` if any split happened.
pub fn decompose_connected(g: &Graph, h: f64) -> Result<Partition> {
    if !(h > 0.0) {
        return Err(invalid("h must be positive"));
    }
    let tree = bfs_spanning_tree(g)?;
    let edges = g.edges();
    let forest = Forest::new(g.n(), tree.into_iter().map(|i| (i, edges[i])));
    Ok(forest.decompose(&g.degrees(), h))
}

/// Partition of a forest with `h = sqrt(Δ n)`, `n` counting non-isolated
/// vertices: small trees stay whole, larger ones are decomposed.
pub fn partition_forest(f: &Graph) -> Result<Partition> {
    if !f.is_forest() {
        return Err(Error::NotAForest);
    }
    let deg = f.degrees();
    let active = deg.iter().filter(|&&d| d > 0).count();
    let h = ((f.max_degree() * active) as f64).sqrt();
    let forest = Forest::new(f.n(), f.edges().iter().copied().enumerate());
    if h == 0.0 {
        return Ok(Partition::singletons(f.n()));
    }
    Ok(forest.decompose(&deg, h))
}

/// Decomposition of a connected graph with `h = sqrt(n Δ d̄) + Δ`.
pub fn partition_avg_degree(g: &Graph) -> Result<Partition> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.edge_count() == 0 {
        return Ok(Partition::whole(g.n()));
    }
    let delta = g.max_degree() as f64;
    let h = (g.n() as f64 * delta * g.average_degree()).sqrt() + delta;
    decompose_connected(g, h)
}

struct Split {
    edge: usize,
    /// Endpoint on the side away from the search root.
    child: usize,
    child_volume: usize,
}

/// A forest with removable edges; edge ids are caller supplied.
struct Forest {
    adj: Vec<Vec<(usize, usize)>>,
    removed: Vec<bool>,
}

impl Forest {
    fn new(n: usize, edges: impl Iterator<Item = (usize, (usize, usize))>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut max_id = 0;
        for (id, (u, v)) in edges {
            adj[u].push((v, id));
            adj[v].push((u, id));
            max_id = max_id.max(id + 1);
        }
        Self {
            adj,
            removed: vec![false; max_id],
        }
    }

    /// Breadth-first order of the component of `root` with parent edges.
    fn component(&self, root: usize, order: &mut Vec<usize>, parent: &mut [(usize, usize)]) {
        order.clear();
        order.push(root);
        parent[root] = (usize::MAX, usize::MAX);
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &(v, id) in &self.adj[u] {
                if !self.removed[id] && parent[u].1 != id {
                    parent[v] = (u, id);
                    order.push(v);
                }
            }
        }
    }

    fn best_split(&self, root: usize, vol: &[usize]) -> Option<Split> {
        let n = self.adj.len();
        let mut order = Vec::new();
        let mut parent = vec![(usize::MAX, usize::MAX); n];
        let mut below = vec![0; n];
        self.component(root, &mut order, &mut parent);
        Self::best_split_in(&order, &parent, vol, &mut below)
    }

    /// `below[v]` receives the volume of the subtree hanging from `v`.
    fn best_split_in(
        order: &[usize],
        parent: &[(usize, usize)],
        vol: &[usize],
        below: &mut [usize],
    ) -> Option<Split> {
        for &v in order {
            below[v] = vol[v];
        }
        for &v in order.iter().skip(1).rev() {
            below[parent[v].0] += below[v];
        }
        let total = below[order[0]];
        let mut best: Option<(usize, Split)> = None;
        for &v in order.iter().skip(1) {
            let id = parent[v].1;
            let s = below[v];
            let score = s.min(total - s);
            let better = match &best {
                None => true,
                Some((b, split)) => score > *b || (score == *b && id < split.edge),
            };
            if better {
                best = Some((
                    score,
                    Split {
                        edge: id,
                        child: v,
                        child_volume: s,
                    },
                ));
            }
        }
        best.map(|(_, s)| s)
    }

    /// Removes centroid edges, largest components first, until every
    /// component has volume at most `h`.
    fn decompose(mut self, vol: &[usize], h: f64) -> Partition {
        let n = self.adj.len();
        let mut labels = vec![usize::MAX; n];
        let mut order = Vec::new();
        let mut parent = vec![(usize::MAX, usize::MAX); n];
        let mut below = vec![0; n];
        let mut heap = BinaryHeap::new();
        for root in 0..n {
            if labels[root] != usize::MAX {
                continue;
            }
            self.component(root, &mut order, &mut parent);
            let total: usize = order.iter().map(|&v| vol[v]).sum();
            for &v in &order {
                labels[v] = root;
            }
            heap.push((total, std::cmp::Reverse(root)));
        }
        let mut next = 0;
        while let Some((total, std::cmp::Reverse(root))) = heap.pop() {
            if total as f64 <= h {
                self.component(root, &mut order, &mut parent);
                for &v in &order {
                    labels[v] = next;
                }
                next += 1;
                continue;
            }
            self.component(root, &mut order, &mut parent);
            match Self::best_split_in(&order, &parent, vol, &mut below) {
                Some(split) => {
                    self.removed[split.edge] = true;
                    heap.push((total - split.child_volume, std::cmp::Reverse(root)));
                    heap.push((split.child_volume, std::cmp::Reverse(split.child)));
                }
                None => {
                    // A single vertex heavier than h cannot be split.
                    labels[root] = next;
                    next += 1;
                }
            }
        }
        Partition::from_labels(&labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    #[test]
    fn centroid_examples() {
        assert_eq!(centroid_edge(&path(3), &[1, 2, 1]).unwrap(), 0);
        let star = Graph::from_edges(5, (1..5).map(|i| (0, i)).collect()).unwrap();
        assert_eq!(centroid_edge(&star, &star.degrees()).unwrap(), 0);
        assert_eq!(centroid_edge(&path(6), &[1; 6]).unwrap(), 2);
        assert!(centroid_edge(&Graph::new(1), &[0]).is_err());
        assert!(matches!(
            centroid_edge(&cycle(4), &[1; 4]),
            Err(Error::NotAForest)
        ));
    }

    #[test]
    fn small_volume_is_one_part() {
        let p = decompose_connected(&cycle(10), 20.0).unwrap();
        assert_eq!(p.part_count(), 1);
    }

    #[test]
    fn cycle_parts_within_bounds() {
        let g = cycle(100);
        let p = decompose_connected(&g, 20.0).unwrap();
        for vol in p.volumes(&g) {
            assert!((9..=20).contains(&vol), "volume {vol}");
        }
    }

    #[test]
    fn long_path_parts_within_bounds() {
        let g = path(1000);
        let p = decompose_connected(&g, 40.0).unwrap();
        assert!(p.part_count() >= 50);
        for vol in p.volumes(&g) {
            assert!((19..=40).contains(&vol), "volume {vol}");
        }
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::from_edges(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            decompose_connected(&g, 3.0),
            Err(Error::Disconnected)
        ));
        assert!(matches!(partition_avg_degree(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn forest_keeps_isolated_vertices_apart() {
        // Path on 10 vertices plus two isolated ones: h = sqrt(2 * 10).
        let f = Graph::from_edges(12, (1..10).map(|i| (i - 1, i)).collect()).unwrap();
        let p = partition_forest(&f).unwrap();
        let vols = p.volumes(&f);
        assert!(vols.iter().all(|&v| v as f64 <= 20f64.sqrt()));
        assert_ne!(p.part_of(10), p.part_of(11));
        assert!((0..10).all(|v| p.part_of(v) != p.part_of(10)));
    }

    #[test]
    fn single_edge_exceeds_h() {
        // vol = 2 > h = sqrt(1 * 2), so the edge itself is cut.
        let p = partition_forest(&path(2)).unwrap();
        assert_eq!(p.part_count(), 2);
    }

    #[test]
    fn spanning_tree_skips_loops() {
        let g = Graph::from_edges(3, vec![(0, 0), (0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(bfs_spanning_tree(&g).unwrap(), vec![1, 3]);
    }
}
