//! Lower bounds from the tree decomposition, and the SPA modularity rate.

use crate::error::{invalid, Result};

/// `1 - 3 sqrt(delta / n)`, `n` counting non-isolated vertices.
pub fn forest_lower(n: usize, delta: usize) -> Result<f64> {
    if n == 0 || delta == 0 {
        return Err(invalid("need n >= 1 and delta >= 1"));
    }
    Ok(1.0 - 3.0 * (delta as f64 / n as f64).sqrt())
}

/// `2/dbar - 3 sqrt(delta/(n dbar)) - delta/(n dbar)`.
pub fn avg_degree_lower(n: usize, delta: usize, dbar: f64) -> Result<f64> {
    if n == 0 || delta == 0 || !(dbar > 0.0) {
        return Err(invalid("need n >= 1, delta >= 1 and dbar > 0"));
    }
    let nd = n as f64 * dbar;
    Ok(2.0 / dbar - 3.0 * (delta as f64 / nd).sqrt() - delta as f64 / nd)
}

/// `n^(max(-1/dim, pA1 - 1)/2) (ln n)^(9/2)`: the rate at which `1 - q*`
/// vanishes for the SPA graph, without its unknown constant.
pub fn spa_rate(n: usize, dim: usize, pa1: f64) -> Result<f64> {
    if dim == 0 || !(pa1 >= 0.0 && pa1 < 1.0) || n < 2 {
        return Err(invalid("need n >= 2, dim >= 1 and 0 <= pA1 < 1"));
    }
    let n = n as f64;
    let exponent = (-1.0 / dim as f64).max(pa1 - 1.0) / 2.0;
    Ok(n.powf(exponent) * n.ln().powf(4.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert!((forest_lower(10_000, 2).unwrap() - 0.957_573).abs() < 1e-6);
        assert!(forest_lower(100, 99).unwrap() < 0.0);
        assert!((avg_degree_lower(10_000, 3, 3.0).unwrap() - 0.636_567).abs() < 1e-6);
        assert!(avg_degree_lower(10, 3, 0.0).is_err());
    }

    #[test]
    fn rate_exponent_selection() {
        let r = spa_rate(10_000, 1, 0.0).unwrap();
        assert!((r - 1e-2 * (10_000f64).ln().powf(4.5)).abs() < 1e-9 * r);
        // pA1 = 1 - 1/dim: both branches agree.
        let a = spa_rate(5_000, 4, 0.75).unwrap();
        let b = 5_000f64.powf(-0.125) * 5_000f64.ln().powf(4.5);
        assert!((a - b).abs() < 1e-12 * b);
        assert!(spa_rate(10, 2, 1.0).is_err());
    }

    #[test]
    fn rate_decreases_once_the_power_dominates() {
        // d/dn ln(rate) < 0 iff ln n > 9 / |exponent|; exponent -1/2 here.
        let mut prev = spa_rate(10_000, 1, 0.0).unwrap();
        for k in 1..50 {
            let n = 10_000 + 5_000 * k;
            let r = spa_rate(n, 1, 0.0).unwrap();
            assert!(r < prev);
            prev = r;
        }
    }
}
