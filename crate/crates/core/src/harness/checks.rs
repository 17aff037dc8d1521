//! Distributional checks of the random graph models.

use rayon::prelude::*;
use serde::Serialize;

use super::stats::{linear_fit, summarize, Summary};
use crate::error::{invalid, Error, Result};
use crate::generators::{gen_pa, gen_spa, PaParams, PaProcess, SpaParams};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MartingaleReport {
    pub pass_fraction: f64,
    pub trials: usize,
    pub checkpoints: Vec<usize>,
    /// Largest `|Y_s - 2mn sqrt(cs/n)| / (mn)^(2/3)` seen in any trial.
    pub worst_ratio: f64,
}

/// Checkpoints `ceil(cn 1.2^j)` in `[cn, n]`, plus `n`.
pub fn martingale_checkpoints(c: f64, n: usize) -> Vec<usize> {
    let start = c * n as f64;
    let mut out = Vec::new();
    let mut s = start;
    while s.ceil() as usize <= n {
        let k = s.ceil() as usize;
        if out.last() != Some(&k) {
            out.push(k);
        }
        s *= 1.2;
    }
    if out.last() != Some(&n) {
        out.push(n);
    }
    out
}

/// For each trial, grows `G_m^n` and tracks `Y_s`, the total degree of the
/// first `floor(cn)` vertices after `s` vertices exist. A trial passes when
/// `|Y_s - 2mn sqrt(cs/n)| <= (mn)^(2/3)` at every checkpoint. Trial `i`
/// uses seed `seed + i`.
pub fn martingale_check(
    m: usize,
    c: f64,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<MartingaleReport> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(invalid("c must be in (0, 1]"));
    }
    let early = (c * n as f64).floor() as usize;
    if early < 1 || trials == 0 || m == 0 {
        return Err(invalid("need cn >= 1, m >= 1 and at least one trial"));
    }
    let checkpoints = martingale_checkpoints(c, n);
    let band = ((m * n) as f64).powf(2.0 / 3.0);
    let ratios: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let mut process = PaProcess::with_capacity(m, seed.wrapping_add(i as u64), n)?;
            let mut y = 0usize;
            let mut worst = 0.0f64;
            let mut next = 0;
            for s in 1..=n {
                let v = s - 1;
                for &(_, target) in process.step() {
                    if v < early {
                        y += 1;
                    }
                    if target < early {
                        y += 1;
                    }
                }
                if next < checkpoints.len() && checkpoints[next] == s {
                    let expected = 2.0 * (m * n) as f64 * (c * s as f64 / n as f64).sqrt();
                    worst = worst.max((y as f64 - expected).abs() / band);
                    next += 1;
                }
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    let passed = ratios.iter().filter(|&&r| r <= 1.0).count();
    Ok(MartingaleReport {
        pass_fraction: passed as f64 / trials as f64,
        trials,
        checkpoints,
        worst_ratio: ratios.iter().cloned().fold(0.0, f64::max),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    /// Slope of `ln(mean deg^- + A2/A1)` against `ln(n/i)` over age bins.
    pub fitted_exponent: f64,
    pub bins: Vec<GrowthBin>,
    pub max_out_degree: usize,
    /// `max deg^+ / (ln n)^2`.
    pub out_degree_constant: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthBin {
    pub first: usize,
    pub last: usize,
    pub mean_in_degree: f64,
    pub max_in_degree: usize,
}

/// In-degree growth of SPA vertices by age. Vertices (1-based `i`) are
/// grouped into `bins` geometric age bins; the expected in-degree satisfies
/// `E deg^-(v_i, n) + A2/A1 ~ (n/i)^(pA1) (1 + A2/A1)`, so the slope of
/// `ln(mean deg^- + A2/A1)` against `ln(n/i)` estimates `pA1`.
pub fn degree_growth_check(params: &SpaParams, bins: usize) -> Result<GrowthReport> {
    if bins < 2 {
        return Err(invalid("need at least two bins"));
    }
    let sg = gen_spa(params)?;
    let n = sg.n();
    if n < 2 * bins {
        return Err(Error::InsufficientRange(format!(
            "n = {n} is too small for {bins} bins"
        )));
    }
    let shift = params.a2 / params.a1;
    let mut edges: Vec<usize> = (0..=bins)
        .map(|j| (n as f64).powf(j as f64 / bins as f64).round() as usize)
        .collect();
    edges[bins] = n + 1;
    edges.dedup();
    let mut out_bins = Vec::new();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for w in edges.windows(2) {
        let (first, last) = (w[0], w[1] - 1);
        if last < first {
            continue;
        }
        let degs = &sg.in_degree[first - 1..last];
        let mean = degs.iter().sum::<usize>() as f64 / degs.len() as f64;
        let mid = ((first as f64) * (last as f64)).sqrt();
        xs.push((n as f64 / mid).ln());
        ys.push((mean + shift).ln());
        out_bins.push(GrowthBin {
            first,
            last,
            mean_in_degree: mean,
            max_in_degree: degs.iter().copied().max().unwrap_or(0),
        });
    }
    let (slope, _) =
        linear_fit(&xs, &ys).ok_or_else(|| Error::InsufficientRange("degenerate bins".into()))?;
    let max_out_degree = sg.out_degree.iter().copied().max().unwrap_or(0);
    Ok(GrowthReport {
        fitted_exponent: slope,
        bins: out_bins,
        max_out_degree,
        out_degree_constant: max_out_degree as f64 / (n as f64).ln().powi(2),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentReport {
    pub summary: Summary,
    /// `sum_{t<=n} 1/(2t-1)`: a component starts exactly at each loop.
    pub expected: f64,
    pub expected_variance: f64,
    pub counts: Vec<usize>,
}

/// Exact mean and variance of the component count of `G_1^n`.
pub fn expected_components(n: usize) -> (f64, f64) {
    (1..=n).fold((0.0, 0.0), |(mean, var), t| {
        let p = 1.0 / (2 * t - 1) as f64;
        (mean + p, var + p * (1.0 - p))
    })
}

/// Component counts of `G_m^n` over `trials` seeds (`seed + i`); `m` must be 1.
pub fn component_count_check(
    m: usize,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<ComponentReport> {
    if m != 1 {
        return Err(invalid(
            "component counting applies to m = 1 (G_m is connected a.a.s. for m >= 2)",
        ));
    }
    let counts = component_counts(1, n, trials, seed)?;
    let values: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let (expected, expected_variance) = expected_components(n);
    Ok(ComponentReport {
        summary: summarize(&values),
        expected,
        expected_variance,
        counts,
    })
}

/// Component counts of `G_m^n` for seeds `seed..seed + trials`.
pub fn component_counts(m: usize, n: usize, trials: usize, seed: u64) -> Result<Vec<usize>> {
    if trials == 0 {
        return Err(invalid("need at least one trial"));
    }
    (0..trials)
        .into_par_iter()
        .map(|i| {
            gen_pa(&PaParams {
                n,
                m,
                seed: seed.wrapping_add(i as u64),
            })
            .map(|g| g.component_count())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawReport {
    pub tail_slope: f64,
    pub k_min: usize,
    pub k_max: usize,
    /// `(k, fraction of vertices with degree >= k)`, pooled over trials.
    pub ccdf: Vec<(usize, f64)>,
}

/// Log-log slope of the pooled degree CCDF of `G_m^n` over
/// `k in [2m, m floor(n^(1/4))]`.
pub fn power_law_check(m: usize, n: usize, trials: usize, seed: u64) -> Result<PowerLawReport> {
    if m == 0 || trials == 0 {
        return Err(invalid("need m >= 1 and at least one trial"));
    }
    if n < 100 {
        return Err(Error::InsufficientRange(format!("n = {n} < 100")));
    }
    let k_min = 2 * m;
    let k_max = m * (n as f64).powf(0.25).floor() as usize;
    if k_max < k_min + 2 {
        return Err(Error::InsufficientRange(format!(
            "k range [{k_min}, {k_max}] has fewer than 3 values"
        )));
    }
    let histograms: Vec<Vec<usize>> = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<Vec<usize>> {
            let g = gen_pa(&PaParams {
                n,
                m,
                seed: seed.wrapping_add(i as u64),
            })?;
            let mut h = vec![0usize; k_max + 2];
            for d in g.degrees() {
                h[d.min(k_max + 1)] += 1;
            }
            Ok(h)
        })
        .collect::<Result<_>>()?;
    let mut pooled = vec![0usize; k_max + 2];
    for h in &histograms {
        for (a, b) in pooled.iter_mut().zip(h) {
            *a += b;
        }
    }
    let total = (n * trials) as f64;
    let mut at_least = vec![0usize; k_max + 2];
    let mut running = 0;
    for k in (0..k_max + 2).rev() {
        running += pooled[k];
        at_least[k] = running;
    }
    let ccdf: Vec<(usize, f64)> = (k_min..=k_max)
        .map(|k| (k, at_least[k] as f64 / total))
        .collect();
    if ccdf.iter().any(|&(_, f)| f == 0.0) {
        return Err(Error::InsufficientRange(
            "empty degree classes in the fitted range".into(),
        ));
    }
    let xs: Vec<f64> = ccdf.iter().map(|&(k, _)| (k as f64).ln()).collect();
    let ys: Vec<f64> = ccdf.iter().map(|&(_, f)| f.ln()).collect();
    let (slope, _) = linear_fit(&xs, &ys).expect("at least three distinct k");
    Ok(PowerLawReport {
        tail_slope: slope,
        k_min,
        k_max,
        ccdf,
    })
}
