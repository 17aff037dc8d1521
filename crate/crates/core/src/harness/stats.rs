//! Small summary statistics.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator); 0 for one value.
    pub std_dev: f64,
    pub count: usize,
}

pub fn summarize(values: &[f64]) -> Summary {
    let count = values.len();
    if count == 0 {
        return Summary {
            mean: f64::NAN,
            std_dev: f64::NAN,
            count,
        };
    }
    let mean = values.iter().sum::<f64>() / count as f64;
    let std_dev = if count > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
    } else {
        0.0
    };
    Summary {
        mean,
        std_dev,
        count,
    }
}

/// Least-squares slope and intercept of `y` on `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_values() {
        let s = summarize(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.std_dev - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(summarize(&[7.0]).std_dev, 0.0);
        assert!(summarize(&[]).mean.is_nan());
    }

    #[test]
    fn exact_line() {
        let x = [1.0, 2.0, 3.0];
        let y = [5.0, 3.0, 1.0];
        assert_eq!(linear_fit(&x, &y), Some((-2.0, 7.0)));
        assert_eq!(linear_fit(&[1.0, 1.0], &[0.0, 1.0]), None);
    }
}
