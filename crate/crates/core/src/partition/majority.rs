//! Red/blue majority colouring of a preferential attachment graph, replayed
//! in creation order.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Partition};
use crate::rng::seeded;

/// How a vertex whose targets are evenly split picks its colour.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    /// Fair coin at exactly `m/2` red targets (even `m`); strict majority
    /// for odd `m`.
    #[default]
    Fair,
    /// Tie probabilities chosen from the current red volume so that the
    /// expected growth of the red volume per step is exactly `m`.
    DriftCorrected,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Colouring {
    pub partition: Partition,
    /// Red volume after each vertex.
    pub red_volume: Vec<usize>,
    /// Number of edges of each vertex landing inside its own colour class.
    pub intra_edges: Vec<usize>,
}

pub fn majority_color_pa(g: &Graph, eps: f64, seed: u64) -> Result<Partition> {
    Ok(majority_colouring(g, eps, TieRule::default(), seed)?.partition)
}

/// Vertices below `floor(eps n / 4)` start red and the rest of the first
/// `floor(eps n)` start blue. Every later vertex looks at the endpoints of
/// its `m` edges (loops excluded) and joins the majority colour.
pub fn majority_colouring(g: &Graph, eps: f64, rule: TieRule, seed: u64) -> Result<Colouring> {
    if !g.is_oriented() {
        return Err(Error::MissingOrientation(
            "majority colouring needs edges in creation order".into(),
        ));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid("eps must be in (0, 1)"));
    }
    let n = g.n();
    let edges = g.edges();
    if n == 0 || edges.len() % n != 0 || edges.is_empty() {
        return Err(Error::MissingOrientation(
            "edge count is not a positive multiple of n".into(),
        ));
    }
    let m = edges.len() / n;
    let seeds = (eps * n as f64).floor() as usize;
    let red_seeds = (eps * n as f64 / 4.0).floor() as usize;
    let pmf = |pi: f64| binomial_pmf(m, pi);
    let mut rng = seeded(seed);
    let mut red = vec![false; n];
    let mut red_volume = Vec::with_capacity(n);
    let mut intra_edges = Vec::with_capacity(n);
    let mut y = 0usize;
    for t in 0..n {
        let own = &edges[t * m..(t + 1) * m];
        if own.iter().any(|&(v, u)| v != t || u > t) {
            return Err(Error::MissingOrientation(format!(
                "edges of vertex {t} are not (younger, older) pairs"
            )));
        }
        let reds = own.iter().filter(|&&(_, u)| u != t && red[u]).count();
        let blues = own.iter().filter(|&&(_, u)| u != t && !red[u]).count();
        red[t] = if t < seeds {
            t < red_seeds
        } else {
            let p_red = match rule {
                TieRule::Fair => fair(m, reds),
                TieRule::DriftCorrected => {
                    let pi = if t == 0 {
                        0.5
                    } else {
                        y as f64 / (2 * m * t) as f64
                    };
                    corrected(m, reds, pi, &pmf)
                }
            };
            p_red >= 1.0 || (p_red > 0.0 && rng.random::<f64>() < p_red)
        };
        let loops = own.len() - reds - blues;
        for &(_, u) in own {
            if u != t && red[u] {
                y += 1;
            }
        }
        if red[t] {
            y += m + loops;
        }
        red_volume.push(y);
        intra_edges.push(loops + if red[t] { reds } else { blues });
    }
    let labels: Vec<usize> = red.iter().map(|&r| usize::from(!r)).collect();
    Ok(Colouring {
        partition: Partition::from_labels(&labels),
        red_volume,
        intra_edges,
    })
}

fn fair(m: usize, reds: usize) -> f64 {
    if 2 * reds > m {
        1.0
    } else if 2 * reds == m {
        0.5
    } else {
        0.0
    }
}

/// With a fraction `pi` of the volume red, an edge hits red with
/// probability about `pi`, so the red volume grows by `m pi + m P(red)` in
/// expectation. Setting `P(red) = 1 - pi` makes that `m`. Only the tie
/// counts are randomized: `m/2` for even `m`, `(m-1)/2` and `(m+1)/2` for
/// odd `m`.
fn corrected(m: usize, reds: usize, pi: f64, pmf: &dyn Fn(f64) -> Vec<f64>) -> f64 {
    let pi = pi.clamp(0.0, 1.0);
    let probs = pmf(pi);
    let target = 1.0 - pi;
    if m % 2 == 0 {
        let half = m / 2;
        if reds != half {
            return if reds > half { 1.0 } else { 0.0 };
        }
        let above: f64 = probs[half + 1..].iter().sum();
        if probs[half] == 0.0 {
            return 0.5;
        }
        ((target - above) / probs[half]).clamp(0.0, 1.0)
    } else {
        let (lo, hi) = ((m - 1) / 2, (m + 1) / 2);
        if reds > hi {
            return 1.0;
        }
        if reds < lo {
            return 0.0;
        }
        let above: f64 = probs[hi + 1..].iter().sum();
        // Red for sure at `hi` unless that already overshoots.
        let (p_hi, p_lo) = if above + probs[hi] <= target {
            let p_lo = if probs[lo] > 0.0 {
                (target - above - probs[hi]) / probs[lo]
            } else {
                0.0
            };
            (1.0, p_lo.clamp(0.0, 1.0))
        } else {
            let p_hi = if probs[hi] > 0.0 {
                (target - above) / probs[hi]
            } else {
                1.0
            };
            (p_hi.clamp(0.0, 1.0), 0.0)
        };
        if reds == hi {
            p_hi
        } else {
            p_lo
        }
    }
}

fn binomial_pmf(m: usize, p: f64) -> Vec<f64> {
    let mut out = vec![0.0; m + 1];
    let mut coef = 1.0f64;
    for (k, slot) in out.iter_mut().enumerate() {
        if k > 0 {
            coef = coef * (m - k + 1) as f64 / k as f64;
        }
        *slot = coef * p.powi(k as i32) * (1.0 - p).powi((m - k) as i32);
    }
    out
}
