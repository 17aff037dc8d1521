//! Exhaustive oracles for small graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};

pub const EXACT_MODULARITY_LIMIT: usize = 12;
pub const ISOPERIMETRIC_LIMIT: usize = 24;

/// Maximum modularity over all set partitions, by restricted-growth-string
/// enumeration (Bell(n) leaves). Returns the first maximiser in enumeration
/// order.
pub fn exact_modularity(g: &Graph) -> Result<(f64, Partition)> {
    let n = g.n();
    if n > EXACT_MODULARITY_LIMIT {
        return Err(Error::OracleLimit {
            what: "exact_modularity",
            limit: EXACT_MODULARITY_LIMIT,
            n,
        });
    }
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::UndefinedModularity);
    }
    // back[v]: endpoints u <= v of edges at v (u == v for loops).
    let mut back = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        let (lo, hi) = (u.min(v), u.max(v));
        back[hi].push(lo);
    }
    let mut search = Search {
        back,
        deg: g.degrees(),
        m4: 4 * m as i64,
        assign: vec![0; n],
        inside: vec![0; n],
        vol: vec![0; n],
        best_score: i64::MIN,
        best: vec![0; n],
    };
    search.descend(0, 0, 0, 0);
    let q = search.best_score as f64 / (4.0 * (m * m) as f64);
    Ok((q, Partition::from_labels(&search.best)))
}

struct Search {
    back: Vec<Vec<usize>>,
    deg: Vec<usize>,
    m4: i64,
    assign: Vec<usize>,
    inside: Vec<i64>,
    vol: Vec<i64>,
    best_score: i64,
    best: Vec<usize>,
}

impl Search {
    /// `4|E|^2 q = 4|E| sum e(A) - sum vol(A)^2`, kept in integers so ties are exact.
    fn descend(&mut self, v: usize, parts: usize, inside_total: i64, vol_sq: i64) {
        if v == self.assign.len() {
            let score = self.m4 * inside_total - vol_sq;
            if score > self.best_score {
                self.best_score = score;
                self.best.copy_from_slice(&self.assign);
            }
            return;
        }
        let dv = self.deg[v] as i64;
        for part in 0..=parts {
            self.assign[v] = part;
            let gained = self.back[v]
                .iter()
                .filter(|&&u| u == v || self.assign[u] == part)
                .count() as i64;
            let old_vol = self.vol[part];
            let new_vol = old_vol + dv;
            self.vol[part] = new_vol;
            self.inside[part] += gained;
            let next_parts = if part == parts { parts + 1 } else { parts };
            self.descend(
                v + 1,
                next_parts,
                inside_total + gained,
                vol_sq - old_vol * old_vol + new_vol * new_vol,
            );
            self.vol[part] = old_vol;
            self.inside[part] -= gained;
        }
    }
}

/// Isoperimetric number `min e(V1, V2) / min(|V1|, |V2|)` over all
/// bipartitions, by a Gray-code scan of the `2^(n-1)` subsets that avoid the
/// last vertex.
pub fn isoperimetric_number(g: &Graph) -> Result<f64> {
    let n = g.n();
    if n > ISOPERIMETRIC_LIMIT {
        return Err(Error::OracleLimit {
            what: "isoperimetric_number",
            limit: ISOPERIMETRIC_LIMIT,
            n,
        });
    }
    if n < 2 {
        return Err(crate::error::invalid(
            "isoperimetric number needs at least 2 vertices",
        ));
    }
    let mut nbrs = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        if u != v {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
    }
    let mut in_set = vec![false; n];
    // into_set[w] = number of edges from w into the current set.
    let mut into_set = vec![0i64; n];
    let mut cut: i64 = 0;
    let mut size: i64 = 0;
    let (mut best_cut, mut best_den) = (i64::MAX, 1i64);
    let total = n as i64;
    for i in 1u64..(1u64 << (n - 1)) {
        let v = i.trailing_zeros() as usize;
        let dv = nbrs[v].len() as i64;
        let delta = if in_set[v] { -1 } else { 1 };
        // Adding v: cut loses edges into the set and gains the rest.
        cut += delta * (dv - 2 * into_set[v]);
        size += delta;
        in_set[v] = !in_set[v];
        for &w in &nbrs[v] {
            into_set[w] += delta;
        }
        let den = size.min(total - size);
        if cut * best_den < best_cut * den {
            best_cut = cut;
            best_den = den;
        }
    }
    Ok(best_cut as f64 / best_den as f64)
}
