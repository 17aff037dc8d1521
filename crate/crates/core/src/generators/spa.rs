//! Spatial preferential attachment on the unit torus `[0,1]^dim`.
//!
//! At step `t` a uniform point `v_t` arrives. Every earlier vertex `u` owns a
//! ball (its sphere of influence) of volume
//! `min((A1 deg^-(u, t-1) + A2) / (t-1), 1)`; if `v_t` falls inside it, the
//! edge `v_t -> u` is created with probability `p`.
//!
//! Finding the balls that contain `v_t` uses a grid per weight level. A
//! vertex's weight `A1 deg^- + A2` only grows, and its radius at a fixed
//! weight only shrinks with `t`, so a grid built at time `T` whose cell side
//! is at least the largest radius any member can have at `T` stays valid for
//! every later step. Grids are rebuilt whenever `t - 1` reaches a power of
//! two. Candidates are tested in increasing vertex order, so the indexed and
//! the naive scan consume the random stream identically.

use std::f64::consts::PI;
use std::io::{BufRead, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::rng::seeded;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    #[serde(rename = "linf")]
    LInf,
    L2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaParams {
    pub n: usize,
    pub dim: usize,
    pub p: f64,
    pub a1: f64,
    pub a2: f64,
    pub norm: Norm,
    pub seed: u64,
}

impl SpaParams {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(invalid("dimension must be at least 1"));
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(invalid("link probability must be in (0, 1]"));
        }
        if !(self.a1 > 0.0 && self.a2 > 0.0) {
            return Err(invalid("A1 and A2 must be positive"));
        }
        if self.p * self.a1 >= 1.0 {
            return Err(invalid(format!("p A1 = {} must be < 1", self.p * self.a1)));
        }
        if self.norm == Norm::L2 && self.dim > 3 {
            return Err(invalid("the L2 ball is supported for dim <= 3"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaGraph {
    pub dim: usize,
    /// Row-major, `dim` coordinates per vertex.
    pub positions: Vec<f64>,
    /// `(younger, older)` in creation order.
    pub edges: Vec<(usize, usize)>,
    pub in_degree: Vec<usize>,
    pub out_degree: Vec<usize>,
}

impl SpaGraph {
    pub fn n(&self) -> usize {
        self.in_degree.len()
    }

    pub fn position(&self, v: usize) -> &[f64] {
        &self.positions[v * self.dim..(v + 1) * self.dim]
    }

    /// One line per vertex, coordinates separated by spaces, in shortest
    /// round-trip form.
    pub fn write_positions<W: Write>(&self, mut w: W) -> Result<()> {
        for v in 0..self.n() {
            let line: Vec<String> = self.position(v).iter().map(|x| x.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    /// Rebuilds an SPA graph from positions (as written by
    /// [`SpaGraph::write_positions`]) and its `(younger, older)` edges.
    pub fn from_parts<R: BufRead>(positions: R, edges: &[(usize, usize)]) -> Result<SpaGraph> {
        let mut coords = Vec::new();
        let mut dim = None;
        for (idx, line) in positions.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|x| x.parse::<f64>())
                .collect::<std::result::Result<Vec<f64>, _>>()
                .map_err(|e| Error::Parse {
                    line: idx + 1,
                    msg: e.to_string(),
                })?;
            if *dim.get_or_insert(row.len()) != row.len() || row.is_empty() {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: "inconsistent coordinate count".into(),
                });
            }
            coords.extend(row);
        }
        let dim = dim.ok_or_else(|| invalid("no positions"))?;
        let n = coords.len() / dim;
        let mut in_degree = vec![0; n];
        let mut out_degree = vec![0; n];
        for &(v, u) in edges {
            if v >= n || u >= v {
                return Err(invalid(format!(
                    "edge ({v}, {u}) is not (younger, older) among {n} vertices"
                )));
            }
            out_degree[v] += 1;
            in_degree[u] += 1;
        }
        Ok(SpaGraph {
            dim,
            positions: coords,
            edges: edges.to_vec(),
            in_degree,
            out_degree,
        })
    }
}

/// `min((A1 indeg + A2) / t, 1)`.
pub fn sphere_volume(indeg: usize, t: usize, a1: f64, a2: f64) -> Result<f64> {
    if t < 1 {
        return Err(invalid("time must be at least 1"));
    }
    Ok(((a1 * indeg as f64 + a2) / t as f64).min(1.0))
}

/// Wrap-around distance on the unit torus.
pub fn torus_distance(x: &[f64], y: &[f64], norm: Norm) -> f64 {
    let deltas = x.iter().zip(y).map(|(a, b)| {
        let d = (a - b).abs();
        d.min(1.0 - d)
    });
    match norm {
        Norm::LInf => deltas.fold(0.0, f64::max),
        Norm::L2 => deltas.map(|d| d * d).sum::<f64>().sqrt(),
    }
}

/// Volume of the ball of radius `r` (an axis-aligned cube of side `2r` for L∞).
pub fn ball_volume_at(r: f64, dim: usize, norm: Norm) -> f64 {
    match norm {
        Norm::LInf => (2.0 * r).powi(dim as i32),
        Norm::L2 => unit_ball_volume(dim) * r.powi(dim as i32),
    }
}

fn unit_ball_volume(dim: usize) -> f64 {
    match dim {
        1 => 2.0,
        2 => PI,
        3 => 4.0 * PI / 3.0,
        _ => unreachable!("validated"),
    }
}

fn radius_of(volume: f64, dim: usize, norm: Norm) -> f64 {
    match norm {
        Norm::LInf => volume.powf(1.0 / dim as f64) / 2.0,
        Norm::L2 => (volume / unit_ball_volume(dim)).powf(1.0 / dim as f64),
    }
}

/// A sphere of volume 1 is the whole torus.
fn contains(volume: f64, dist: f64, dim: usize, norm: Norm) -> bool {
    volume >= 1.0 || ball_volume_at(dist, dim, norm) <= volume
}

pub fn gen_spa(params: &SpaParams) -> Result<SpaGraph> {
    generate(params, true)
}

/// Reference sampler that tests every earlier vertex at every step.
pub fn gen_spa_naive(params: &SpaParams) -> Result<SpaGraph> {
    generate(params, false)
}

fn generate(params: &SpaParams, indexed: bool) -> Result<SpaGraph> {
    params.validate()?;
    let SpaParams {
        n,
        dim,
        p,
        a1,
        a2,
        norm,
        ..
    } = *params;
    let mut rng = seeded(params.seed);
    let mut sg = SpaGraph {
        dim,
        positions: Vec::with_capacity(n * dim),
        edges: Vec::new(),
        in_degree: Vec::with_capacity(n),
        out_degree: Vec::with_capacity(n),
    };
    let mut index = LevelIndex::new(dim, norm, a1, a2);
    let mut candidates = Vec::new();
    let mut point = vec![0.0; dim];
    for existing in 0..n {
        // Step t = existing + 1; earlier spheres are measured at time t - 1.
        point.iter_mut().for_each(|x| *x = rng.random::<f64>());
        candidates.clear();
        if existing > 0 {
            if indexed {
                if existing.is_power_of_two() {
                    index.rebuild(existing, &sg);
                }
                index.query(&point, existing, &sg, &mut candidates);
                candidates.sort_unstable();
            } else {
                for u in 0..existing {
                    let vol = ((a1 * sg.in_degree[u] as f64 + a2) / existing as f64).min(1.0);
                    if contains(vol, torus_distance(&point, sg.position(u), norm), dim, norm) {
                        candidates.push(u);
                    }
                }
            }
        }
        let v = existing;
        sg.positions.extend_from_slice(&point);
        sg.in_degree.push(0);
        sg.out_degree.push(0);
        for &u in &candidates {
            if rng.random::<f64>() < p {
                sg.edges.push((v, u));
                sg.out_degree[v] += 1;
                sg.in_degree[u] += 1;
                if indexed {
                    index.update(u, &sg);
                }
            }
        }
        if indexed {
            index.insert(v, &sg);
        }
    }
    Ok(sg)
}

/// Replaces each directed edge by an undirected one. Edges always run from
/// a younger to an older vertex, so the result is simple.
pub fn undirect(sg: &SpaGraph) -> Graph {
    Graph::from_edges(sg.n(), sg.edges.clone())
        .expect("edges reference existing vertices")
        .with_orientation(true)
}

const MAX_CELLS_PER_LEVEL: usize = 1 << 18;

struct LevelGrid {
    per_axis: usize,
    cells: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Default)]
struct Loc {
    level: usize,
    cell: usize,
    slot: usize,
}

/// Vertices bucketed by weight level `floor(log2(1 + A1/A2 deg^-))`, one
/// uniform grid per level.
struct LevelIndex {
    dim: usize,
    norm: Norm,
    a1: f64,
    a2: f64,
    epoch: usize,
    levels: Vec<LevelGrid>,
    loc: Vec<Loc>,
}

impl LevelIndex {
    fn new(dim: usize, norm: Norm, a1: f64, a2: f64) -> Self {
        Self {
            dim,
            norm,
            a1,
            a2,
            epoch: 1,
            levels: Vec::new(),
            loc: Vec::new(),
        }
    }

    fn level_of(&self, indeg: usize) -> usize {
        (1.0 + self.a1 / self.a2 * indeg as f64).log2().floor() as usize
    }

    fn rebuild(&mut self, t: usize, sg: &SpaGraph) {
        self.epoch = t;
        let mut counts = Vec::new();
        for &d in &sg.in_degree {
            let k = self.level_of(d);
            if counts.len() <= k {
                counts.resize(k + 1, 0);
            }
            counts[k] += 1;
        }
        self.levels = counts
            .iter()
            .enumerate()
            .map(|(k, &count)| self.empty_level(k, count))
            .collect();
        self.loc.clear();
        self.loc.resize(sg.n(), Loc::default());
        for v in 0..sg.n() {
            self.place(v, self.level_of(sg.in_degree[v]), sg.position(v));
        }
    }

    /// Cell side is at least the largest radius a member of level `k` can
    /// have from the current epoch on.
    fn empty_level(&self, k: usize, count: usize) -> LevelGrid {
        let vol = self.a2 * 2f64.powi(k as i32 + 1) / self.epoch as f64;
        let mut per_axis = if vol >= 1.0 {
            1
        } else {
            ((1.0 / radius_of(vol, self.dim, self.norm)).floor() as usize).max(1)
        };
        let cap = (4 * count).clamp(1, MAX_CELLS_PER_LEVEL);
        while per_axis > 1 && per_axis.pow(self.dim as u32) > cap {
            per_axis -= 1;
        }
        LevelGrid {
            per_axis,
            cells: vec![Vec::new(); per_axis.pow(self.dim as u32)],
        }
    }

    fn cell_of(x: &[f64], per_axis: usize) -> usize {
        x.iter().rev().fold(0, |acc, &c| {
            acc * per_axis + ((c * per_axis as f64) as usize).min(per_axis - 1)
        })
    }

    fn place(&mut self, v: usize, level: usize, pos: &[f64]) {
        while self.levels.len() <= level {
            let fresh = self.empty_level(self.levels.len(), 0);
            self.levels.push(fresh);
        }
        let grid = &mut self.levels[level];
        let cell = Self::cell_of(pos, grid.per_axis);
        let slot = grid.cells[cell].len();
        grid.cells[cell].push(v as u32);
        self.loc[v] = Loc { level, cell, slot };
    }

    fn remove(&mut self, v: usize) {
        let Loc { level, cell, slot } = self.loc[v];
        let bucket = &mut self.levels[level].cells[cell];
        bucket.swap_remove(slot);
        if let Some(&moved) = bucket.get(slot) {
            self.loc[moved as usize].slot = slot;
        }
    }

    fn insert(&mut self, v: usize, sg: &SpaGraph) {
        if self.loc.len() <= v {
            self.loc.resize(v + 1, Loc::default());
        }
        self.place(v, self.level_of(sg.in_degree[v]), sg.position(v));
    }

    fn update(&mut self, u: usize, sg: &SpaGraph) {
        let level = self.level_of(sg.in_degree[u]);
        if level != self.loc[u].level {
            self.remove(u);
            self.place(u, level, sg.position(u));
        }
    }

    /// Pushes every vertex whose sphere at time `t` contains `point`.
    fn query(&self, point: &[f64], t: usize, sg: &SpaGraph, out: &mut Vec<usize>) {
        let mut test = |bucket: &[u32]| {
            for &u in bucket {
                let u = u as usize;
                let vol = ((self.a1 * sg.in_degree[u] as f64 + self.a2) / t as f64).min(1.0);
                if contains(
                    vol,
                    torus_distance(point, sg.position(u), self.norm),
                    self.dim,
                    self.norm,
                ) {
                    out.push(u);
                }
            }
        };
        for grid in &self.levels {
            let g = grid.per_axis;
            if g < 3 {
                grid.cells.iter().for_each(|b| test(b));
                continue;
            }
            let home: Vec<usize> = point
                .iter()
                .map(|&c| ((c * g as f64) as usize).min(g - 1))
                .collect();
            let neighbourhood = 3usize.pow(self.dim as u32);
            for code in 0..neighbourhood {
                let mut rest = code;
                let mut cell = 0;
                let mut stride = 1;
                for &h in &home {
                    let shifted = (h + g + rest % 3 - 1) % g;
                    rest /= 3;
                    cell += shifted * stride;
                    stride *= g;
                }
                test(&grid.cells[cell]);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, seed: u64) -> SpaParams {
        SpaParams {
            n,
            dim: 2,
            p: 0.7,
            a1: 1.0,
            a2: 1.0,
            norm: Norm::LInf,
            seed,
        }
    }

    #[test]
    fn sphere_volume_examples() {
        assert!((sphere_volume(0, 10, 1.0, 2.0).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(sphere_volume(5, 3, 1.0, 1.0).unwrap(), 1.0);
        assert!((sphere_volume(3, 100, 2.0, 1.0).unwrap() - 0.07).abs() < 1e-15);
        assert!(sphere_volume(0, 0, 1.0, 1.0).is_err());
    }

    #[test]
    fn torus_distance_examples() {
        assert_eq!(torus_distance(&[0.3, 0.4], &[0.3, 0.4], Norm::L2), 0.0);
        assert!((torus_distance(&[0.1], &[0.9], Norm::LInf) - 0.2).abs() < 1e-15);
        let d = torus_distance(&[0.0, 0.0], &[0.5, 0.5], Norm::L2);
        assert!((d - 2f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn radius_inverts_ball_volume() {
        for norm in [Norm::LInf, Norm::L2] {
            for dim in 1..=3 {
                let r = radius_of(0.013, dim, norm);
                assert!((ball_volume_at(r, dim, norm) - 0.013).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn first_vertex_is_isolated() {
        let sg = gen_spa(&params(1, 3)).unwrap();
        assert_eq!(sg.n(), 1);
        assert!(sg.edges.is_empty());
    }

    #[test]
    fn capped_spheres_link_with_probability_p() {
        // A2 >= t keeps every sphere at volume 1 up to step 41.
        let mut hits = 0;
        let mut total = 0;
        for seed in 0..50 {
            let sg = gen_spa(&SpaParams {
                n: 41,
                a2: 40.0,
                a1: 0.5,
                ..params(41, seed)
            })
            .unwrap();
            hits += sg.edges.len();
            total += 41 * 40 / 2;
        }
        let f = hits as f64 / total as f64;
        assert!((f - 0.7).abs() < 0.01, "link fraction {f}");
    }

    #[test]
    fn indexed_matches_naive() {
        for (norm, dim) in [
            (Norm::LInf, 1),
            (Norm::LInf, 2),
            (Norm::L2, 2),
            (Norm::L2, 3),
            (Norm::LInf, 3),
        ] {
            for seed in 0..3 {
                let p = SpaParams {
                    norm,
                    dim,
                    ..params(3000, seed)
                };
                assert_eq!(
                    gen_spa(&p).unwrap(),
                    gen_spa_naive(&p).unwrap(),
                    "{norm:?} dim {dim}"
                );
            }
        }
    }

    #[test]
    fn edges_point_backwards() {
        let sg = gen_spa(&params(2000, 8)).unwrap();
        assert!(sg.edges.iter().all(|&(v, u)| u < v));
        assert_eq!(sg.in_degree.iter().sum::<usize>(), sg.edges.len());
        let g = undirect(&sg);
        assert!(g.is_simple());
        assert_eq!(g.edge_count(), sg.edges.len());
    }

    #[test]
    fn validation() {
        assert!(gen_spa(&SpaParams {
            p: 0.0,
            ..params(5, 0)
        })
        .is_err());
        assert!(gen_spa(&SpaParams {
            a1: 2.0,
            ..params(5, 0)
        })
        .is_err());
        assert!(gen_spa(&SpaParams {
            dim: 4,
            norm: Norm::L2,
            ..params(5, 0)
        })
        .is_err());
        assert!(gen_spa(&SpaParams {
            dim: 0,
            ..params(5, 0)
        })
        .is_err());
    }

    #[test]
    fn positions_round_trip() {
        let sg = gen_spa(&SpaParams {
            dim: 3,
            norm: Norm::L2,
            ..params(300, 4)
        })
        .unwrap();
        let mut text = Vec::new();
        sg.write_positions(&mut text).unwrap();
        let back = SpaGraph::from_parts(&text[..], &sg.edges).unwrap();
        assert_eq!(back, sg);
        assert!(SpaGraph::from_parts(&b"0.1 0.2\n0.3\n"[..], &[]).is_err());
        assert!(SpaGraph::from_parts(&text[..], &[(0, 1)]).is_err());
    }

    #[test]
    fn empty_and_single_edge_undirect() {
        let empty = SpaGraph {
            dim: 1,
            positions: vec![],
            edges: vec![],
            in_degree: vec![],
            out_degree: vec![],
        };
        assert_eq!(undirect(&empty).n(), 0);
        let one = SpaGraph {
            dim: 1,
            positions: vec![0.1, 0.2],
            edges: vec![(1, 0)],
            in_degree: vec![1, 0],
            out_degree: vec![0, 1],
        };
        assert_eq!(undirect(&one).edges(), &[(1, 0)]);
    }
}
