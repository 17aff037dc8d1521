//! Partition of an SPA graph into slabs along the first coordinate.

use crate::error::{invalid, Result};
use crate::generators::{undirect, SpaGraph};
use crate::graph::Partition;
use crate::modularity::modularity;

/// Vertex `v` goes to strip `floor(x_0(v) omega)`; empty strips are dropped.
pub fn strip_partition(sg: &SpaGraph, omega: usize) -> Result<Partition> {
    if omega == 0 {
        return Err(invalid("omega must be at least 1"));
    }
    let labels: Vec<usize> = (0..sg.n())
        .map(|v| ((sg.position(v)[0] * omega as f64) as usize).min(omega - 1))
        .collect();
    Ok(Partition::from_labels(&labels))
}

/// `max(1, round(n^(min(1/dim, 1 - pA1)/2) / sqrt(ln n)))`.
pub fn default_omega(n: usize, dim: usize, pa1: f64) -> Result<usize> {
    if dim == 0 || !(pa1 > 0.0 && pa1 < 1.0) {
        return Err(invalid("need dim >= 1 and 0 < pA1 < 1"));
    }
    if n < 3 {
        return Ok(1);
    }
    let n = n as f64;
    let exponent = (1.0 / dim as f64).min(1.0 - pa1) / 2.0;
    Ok(((n.powf(exponent) / n.ln().sqrt()).round() as usize).max(1))
}

/// Strip count in `1..=max_omega` with the highest modularity on the
/// undirected graph; ties go to the smaller count.
pub fn best_strip_partition(sg: &SpaGraph, max_omega: usize) -> Result<(usize, f64, Partition)> {
    let g = undirect(sg);
    let mut best: Option<(usize, f64, Partition)> = None;
    for omega in 1..=max_omega.max(1) {
        let p = strip_partition(sg, omega)?;
        let q = modularity(&g, &p)?.q;
        if best.as_ref().is_none_or(|b| q > b.1) {
            best = Some((omega, q, p));
        }
    }
    Ok(best.expect("at least one strip count"))
}
