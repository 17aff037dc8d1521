//! Bounds for the preferential attachment graph `G_m^n`.

use crate::error::{invalid, Result};

/// `1/m`.
pub fn pa_lower_l1(m: usize) -> Result<f64> {
    if m == 0 {
        return Err(invalid("m must be at least 1"));
    }
    Ok(1.0 / m as f64)
}

/// `E|Bin(m, 1/2) - m/2| / m`, via
/// `(2^(1-m)/m) sum_{i=1}^{m/2} i C(m, m/2+i)` for even `m` and
/// `(2^(1-m)/m) sum_{i=1}^{(m+1)/2} (i-1/2) C(m, (m-1)/2+i)` for odd `m`.
pub fn pa_lower_l2(m: usize) -> Result<f64> {
    if m == 0 {
        return Err(invalid("m must be at least 1"));
    }
    let mut ln_fact = vec![0.0f64; m + 1];
    for k in 1..=m {
        ln_fact[k] = ln_fact[k - 1] + (k as f64).ln();
    }
    let ln_choose = |k: usize| ln_fact[m] - ln_fact[k] - ln_fact[m - k];
    let scale = (1.0 - m as f64) * 2f64.ln();
    let sum: f64 = if m % 2 == 0 {
        (1..=m / 2)
            .map(|i| i as f64 * (ln_choose(m / 2 + i) + scale).exp())
            .sum()
    } else {
        (1..=m.div_ceil(2))
            .map(|i| (i as f64 - 0.5) * (ln_choose((m - 1) / 2 + i) + scale).exp())
            .sum()
    };
    Ok(sum / m as f64)
}

/// `max(15/16, 3/4 + 3/(8m))` in the epsilon-free limit; `15/16` for every
/// `m >= 2`.
pub fn pa_upper(m: usize) -> Result<f64> {
    if m < 2 {
        return Err(invalid("the upper bound needs m >= 2"));
    }
    Ok((15.0f64 / 16.0).max(0.75 + 3.0 / (8.0 * m as f64)))
}

/// `m/2 - 3/4`, the epsilon-free edge expansion lower bound.
pub fn mihail_expansion_lower(m: usize) -> Result<f64> {
    if m == 0 {
        return Err(invalid("m must be at least 1"));
    }
    Ok(m as f64 / 2.0 - 0.75)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `E|Bin(m,1/2) - m/2| / m` over all `2^m` outcomes.
    fn enumerate(m: usize) -> f64 {
        let total: f64 = (0u32..1 << m)
            .map(|mask| (mask.count_ones() as f64 - m as f64 / 2.0).abs())
            .sum();
        total / (1u64 << m) as f64 / m as f64
    }

    #[test]
    fn l2_matches_enumeration() {
        for m in 1..=20 {
            let v = pa_lower_l2(m).unwrap();
            assert!((v - enumerate(m)).abs() < 1e-13, "m = {m}");
        }
        assert!((pa_lower_l2(7).unwrap() - 0.15625).abs() < 1e-14);
        assert!((pa_lower_l2(8).unwrap() - 140.0 / 1024.0).abs() < 1e-14);
        assert!((pa_lower_l2(1).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn upper_and_expansion() {
        assert_eq!(pa_upper(2).unwrap(), 0.9375);
        assert_eq!(pa_upper(3).unwrap(), 0.9375);
        assert!(pa_upper(1).is_err());
        assert_eq!(mihail_expansion_lower(2).unwrap(), 0.25);
        assert!(pa_lower_l1(0).is_err());
    }
}
