//! Second adjacency eigenvalue of regular graphs and the expansion
//! inequalities it implies.

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph};
use crate::rng::{seeded, SeededRng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda_min: f64,
    /// `max(|lambda2|, |lambda_min|)`.
    pub lambda: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Estimates `lambda = max(|lambda_2|, |lambda_n|)` for a simple, connected,
/// `d`-regular graph.
///
/// Runs power iteration twice on positive semidefinite shifts of the
/// adjacency operator, restricted to the complement of the all-ones vector:
/// `A + dI` converges to `lambda_2 + d` and `dI - A` to `d - lambda_n`. Each
/// run stops once `|Ax - mu x|_inf <= tol * d` for the iterate scaled to unit
/// max-norm.
pub fn second_eigenvalue(
    g: &Graph,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> Result<SpectralSummary> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !(tol > 0.0) {
        return Err(crate::error::invalid("tolerance must be positive"));
    }
    let d = d as f64;
    if g.n() == 1 {
        return Ok(SpectralSummary {
            lambda1: d,
            lambda2: 0.0,
            lambda_min: 0.0,
            lambda: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }
    let adj = g.adjacency();
    let mut rng = seeded(seed);
    let (top, it_top, res_top) = deflated_power(&adj, d, 1.0, tol, max_iter, &mut rng)?;
    let (bottom, it_bot, res_bot) = deflated_power(&adj, d, -1.0, tol, max_iter, &mut rng)?;
    let lambda2 = top - d;
    let lambda_min = d - bottom;
    Ok(SpectralSummary {
        lambda1: d,
        lambda2,
        lambda_min,
        lambda: lambda2.abs().max(lambda_min.abs()),
        iterations: it_top + it_bot,
        residual: res_top.max(res_bot),
    })
}

/// Dominant eigenvalue of `dI + sign * A` on the complement of the ones vector.
fn deflated_power(
    adj: &Adjacency,
    d: f64,
    sign: f64,
    tol: f64,
    max_iter: usize,
    rng: &mut SeededRng,
) -> Result<(f64, usize, f64)> {
    let n = adj.len();
    let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    remove_mean(&mut x);
    normalize(&mut x);
    let mut y = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        for v in 0..n {
            let s: f64 = adj.neighbors(v).iter().map(|&w| x[w]).sum();
            y[v] = d * x[v] + sign * s;
        }
        remove_mean(&mut y);
        let mu: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let xmax = x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        residual = x
            .iter()
            .zip(&y)
            .fold(0.0f64, |acc, (a, b)| acc.max((b - mu * a).abs()))
            / xmax;
        if residual <= tol * d {
            return Ok((mu, it, residual));
        }
        std::mem::swap(&mut x, &mut y);
        if normalize(&mut x) == 0.0 {
            // The iterate fell into the kernel: every eigenvalue of the
            // restricted operator is zero.
            return Ok((0.0, it, 0.0));
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
    })
}

fn remove_mean(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionCheck {
    pub pass: bool,
    pub trials: usize,
    /// A subset violating one of the inequalities, if any was found.
    pub witness: Option<Vec<usize>>,
}

/// Checks, for a single subset `S` of a `d`-regular graph,
/// `e(S, V\S) >= (d - lambda)|S||V\S|/n` and
/// `e(S) <= (d x + lambda (1 - x)) x n / 2` with `x = |S|/n`.
pub fn expansion_holds(g: &Graph, d: usize, lambda: f64, in_set: &[bool]) -> bool {
    let n = g.n() as f64;
    let s = in_set.iter().filter(|&&b| b).count() as f64;
    let (inside, boundary) = g.edge_counts(in_set);
    let d = d as f64;
    let slack = 1e-9 * d * n;
    let cut_ok = boundary as f64 + slack >= (d - lambda) * s * (n - s) / n;
    let x = s / n;
    let inside_ok = inside as f64 <= (d * x + lambda * (1.0 - x)) * x * n / 2.0 + slack;
    cut_ok && inside_ok
}

/// Samples `trials` subsets (size uniform in `1..=n/2`, then a uniform subset
/// of that size) and checks both expansion inequalities on each.
pub fn check_expansion_inequality(
    g: &Graph,
    lambda: f64,
    trials: usize,
    seed: u64,
) -> Result<ExpansionCheck> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    let n = g.n();
    let mut rng = seeded(seed);
    let mut in_set = vec![false; n];
    for t in 0..trials {
        if n < 2 {
            break;
        }
        let size = rng.random_range(1..=n / 2);
        let chosen = sample(&mut rng, n, size).into_vec();
        in_set.iter_mut().for_each(|b| *b = false);
        for &v in &chosen {
            in_set[v] = true;
        }
        if !expansion_holds(g, d, lambda, &in_set) {
            let mut witness = chosen;
            witness.sort_unstable();
            return Ok(ExpansionCheck {
                pass: false,
                trials: t + 1,
                witness: Some(witness),
            });
        }
    }
    Ok(ExpansionCheck {
        pass: true,
        trials,
        witness: None,
    })
}
