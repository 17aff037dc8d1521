//! Undirected multigraphs with loops, and vertex partitions.
//!
//! Edges keep their insertion order. Generators that grow a graph one vertex
//! at a time store each edge as `(creator, target)` and mark the graph as
//! *oriented*, which lets later passes replay the growth process.

use std::collections::VecDeque;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    oriented: bool,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            oriented: false,
        }
    }

    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(invalid(format!(
                "edge ({u}, {v}) has an endpoint >= n = {n}"
            )));
        }
        Ok(Self {
            n,
            edges,
            oriented: false,
        })
    }

    /// Marks every edge as stored `(creator, target)` in creation order.
    pub fn with_orientation(mut self, oriented: bool) -> Self {
        self.oriented = oriented;
        self
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u}, {v}) out of range");
        self.edges.push((u, v));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    /// Degrees with loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.edges.len() as f64 / self.n as f64
        }
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = *deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.edges.len());
        self.edges
            .iter()
            .all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency::new(self)
    }

    /// Component label per vertex, labels in order of smallest member.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &w in adj.neighbors(v) {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn component_count(&self) -> usize {
        self.components().0
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    /// True when the graph has no cycle (loops and parallel edges are cycles).
    pub fn is_forest(&self) -> bool {
        let mut dsu = DisjointSets::new(self.n);
        self.edges.iter().all(|&(u, v)| dsu.union(u, v))
    }

    /// `(e(S), e(S, V \ S))`; a loop inside `S` counts once toward `e(S)`.
    pub fn edge_counts(&self, in_set: &[bool]) -> (usize, usize) {
        debug_assert_eq!(in_set.len(), self.n);
        let mut inside = 0;
        let mut boundary = 0;
        for &(u, v) in &self.edges {
            match (in_set[u], in_set[v]) {
                (true, true) => inside += 1,
                (true, false) | (false, true) => boundary += 1,
                _ => {}
            }
        }
        (inside, boundary)
    }
}

/// Compressed neighbour lists. A loop puts its vertex twice in its own list,
/// so `neighbors(v).len()` equals the degree.
#[derive(Debug, Clone)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Adjacency {
    pub fn new(g: &Graph) -> Self {
        let deg = g.degrees();
        let mut offsets = Vec::with_capacity(g.n() + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..g.n()].to_vec();
        let mut targets = vec![0; offsets[g.n()]];
        for &(u, v) in g.edges() {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        Self { offsets, targets }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// A surjective map from vertices onto part ids `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    assignment: Vec<usize>,
    k: usize,
}

impl Partition {
    /// Relabels arbitrary labels to `0..k` in order of first appearance.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let assignment = labels
            .iter()
            .map(|&l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        Self {
            assignment,
            k: map.len(),
        }
    }

    pub fn whole(n: usize) -> Self {
        Self {
            assignment: vec![0; n],
            k: usize::from(n > 0),
        }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            assignment: (0..n).collect(),
            k: n,
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn part_count(&self) -> usize {
        self.k
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (v, &p) in self.assignment.iter().enumerate() {
            parts[p].push(v);
        }
        parts
    }

    /// Sum of host degrees per part.
    pub fn volumes(&self, g: &Graph) -> Vec<usize> {
        let mut vol = vec![0; self.k];
        for &(u, v) in g.edges() {
            vol[self.assignment[u]] += 1;
            vol[self.assignment[v]] += 1;
        }
        vol
    }

    pub(crate) fn check_covers(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::PartitionMismatch {
                expected: g.n(),
                got: self.len(),
            });
        }
        Ok(())
    }
}

/// Edge-list text format: `n <count>`, an optional `# oriented` line, then
/// one `u v` pair per line in creation order.
pub fn write_edge_list<W: Write>(mut w: W, g: &Graph) -> Result<()> {
    writeln!(w, "n {}", g.n())?;
    if g.is_oriented() {
        writeln!(w, "# oriented")?;
    }
    for &(u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<Graph> {
    let mut n = None;
    let mut oriented = false;
    let mut edges = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(comment) = t.strip_prefix('#') {
            if comment.trim() == "oriented" {
                oriented = true;
            }
            continue;
        }
        let mut fields = t.split_whitespace();
        let a = fields.next().unwrap();
        let b = fields
            .next()
            .ok_or_else(|| parse_err(lineno, "expected two fields"))?;
        if fields.next().is_some() {
            return Err(parse_err(lineno, "expected two fields"));
        }
        if n.is_none() {
            if a != "n" {
                return Err(parse_err(lineno, "expected header `n <count>`"));
            }
            n = Some(parse_usize(b, lineno)?);
            continue;
        }
        edges.push((parse_usize(a, lineno)?, parse_usize(b, lineno)?));
    }
    let n = n.ok_or_else(|| parse_err(1, "missing header `n <count>`"))?;
    Ok(Graph::from_edges(n, edges)?.with_orientation(oriented))
}

/// Partition file: one `vertex part_id` line per vertex.
pub fn write_partition<W: Write>(mut w: W, p: &Partition) -> Result<()> {
    for (v, part) in p.assignment().iter().enumerate() {
        writeln!(w, "{v} {part}")?;
    }
    Ok(())
}

pub fn read_partition<R: BufRead>(r: R) -> Result<Partition> {
    let mut labels: Vec<Option<usize>> = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut fields = t.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(lineno, "expected `vertex part_id`"));
        };
        let v = parse_usize(a, lineno)?;
        let part = parse_usize(b, lineno)?;
        if v >= labels.len() {
            labels.resize(v + 1, None);
        }
        if labels[v].replace(part).is_some() {
            return Err(parse_err(lineno, "vertex assigned twice"));
        }
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| invalid(format!("vertex {v} has no part"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::from_labels(&labels))
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, format!("not a non-negative integer: {s:?}")))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
