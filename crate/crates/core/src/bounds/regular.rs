//! Upper bounds for random d-regular graphs.

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// First-moment exponent for a set of `xn` vertices inducing `yxn/2` edges
/// in a random `d`-regular graph:
///
/// ```text
/// f = x(y/2-1) ln x + (1-x)(d-1) ln(1-x) + d ln d / 2
///     - xy ln y / 2 - x(d-y) ln(d-y) - (d-2xd+xy) ln(d-2xd+xy) / 2
/// ```
///
/// with `0 ln 0 = 0`, so `y = d` gives the limit value.
pub fn f_reg(x: f64, y: f64, d: usize) -> Result<f64> {
    let df = d as f64;
    if d < 3 || !(x > 0.0 && x < 1.0) || !(y > 0.0 && y <= df) {
        return Err(invalid(format!("f({x}, {y}, {d}) is outside its domain")));
    }
    let mut rest = df - 2.0 * x * df + x * y;
    if rest < 0.0 && rest > -1e-12 * df {
        rest = 0.0;
    }
    if rest < 0.0 {
        return Err(invalid(format!("f({x}, {y}, {d}): d - 2xd + xy < 0")));
    }
    Ok(
        x * (y / 2.0 - 1.0) * x.ln() + (1.0 - x) * (df - 1.0) * (1.0 - x).ln() + xlogx(df) / 2.0
            - x * xlogx(y) / 2.0
            - x * xlogx(df - y)
            - xlogx(rest) / 2.0,
    )
}

/// Largest root of `y -> f(x, y, d)` in `(0, d)`: scan down from
/// `d(1 - 1e-6)` in steps of `d/1000`, then bisect the first bracket.
pub fn y_bar(x: f64, d: usize, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    let df = d as f64;
    let step = df / 1000.0;
    // Below this y the complement cannot absorb the edges leaving the set.
    let floor = (df * (2.0 - 1.0 / x)).max(0.0);
    let mut hi = df * (1.0 - 1e-6);
    if f_reg(x, hi, d)? >= 0.0 {
        return Err(Error::NoRoot(format!(
            "f({x}, y, {d}) is not negative near y = d"
        )));
    }
    loop {
        let lo = (hi - step).max(floor);
        if lo <= 0.0 || lo >= hi {
            return Err(Error::NoRoot(format!(
                "f({x}, y, {d}) < 0 on its whole domain"
            )));
        }
        let value = f_reg(x, lo, d)
            .map_err(|_| Error::NoRoot(format!("left the domain of f({x}, y, {d})")))?;
        if value >= 0.0 {
            return Ok(bisect(
                |y| f_reg(x, y, d).expect("inside bracket"),
                lo,
                hi,
                tol,
            ));
        }
        hi = lo;
    }
}

/// Root of `g` in `[lo, hi]` with `g(lo) >= 0 > g(hi)`.
fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `sup_x (y_bar(x, d)/d - x)`: grid over `x` in steps of `1e-4`, then golden
/// section search around the best grid point.
pub fn u3(d: usize, tol: f64) -> Result<f64> {
    Ok(u3_argmax(d, tol)?.1)
}

/// `(x, U3(d))` at the maximiser.
pub fn u3_argmax(d: usize, tol: f64) -> Result<(f64, f64)> {
    let df = d as f64;
    let objective = |x: f64| y_bar(x, d, tol).map(|y| y / df - x);
    let grid: Vec<f64> = (1..10_000).map(|i| i as f64 * 1e-4).collect();
    let values = grid
        .par_iter()
        .map(|&x| objective(x))
        .collect::<Result<Vec<f64>>>()?;
    let (best, _) = values
        .iter()
        .enumerate()
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
        );
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let x = golden_max(|x| objective(x).unwrap_or(f64::NEG_INFINITY), lo, hi, 1e-9);
    let refined = objective(x)?;
    Ok(if refined >= values[best] {
        (x, refined)
    } else {
        (grid[best], values[best])
    })
}

fn golden_max(g: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut e = a + r * (b - a);
    let (mut gc, mut ge) = (g(c), g(e));
    while b - a > tol {
        if gc > ge {
            b = e;
            e = c;
            ge = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = e;
            gc = ge;
            e = a + r * (b - a);
            ge = g(e);
        }
    }
    0.5 * (a + b)
}

/// `max_{2 <= k <= k_max} (y_bar(1/k, d)/d - 1/k)` and its argmax.
pub fn u4(d: usize, k_max: usize, tol: f64) -> Result<(f64, usize)> {
    if k_max < 2 {
        return Err(invalid("k_max must be at least 2"));
    }
    let df = d as f64;
    let mut best = (f64::NEG_INFINITY, 0);
    for k in 2..=k_max {
        let x = 1.0 / k as f64;
        let v = y_bar(x, d, tol)? / df - x;
        if v > best.0 {
            best = (v, k);
        }
    }
    Ok(best)
}

/// The `eta` in `(0, 1)` with `(1-eta) ln(1-eta) + (1+eta) ln(1+eta) = (4/d) ln 2`.
pub fn eta(d: usize, tol: f64) -> Result<f64> {
    if d < 3 {
        return Err(invalid("eta needs d >= 3"));
    }
    let target = 4.0 / d as f64 * 2f64.ln();
    let g = |e: f64| xlogx(1.0 - e) + xlogx(1.0 + e) - target;
    // g(0) < 0 < g(1), increasing; bisect expects the opposite sign order.
    Ok(bisect(|e| -g(e), 0.0, 1.0, tol.max(1e-16)))
}

/// `max(1/2 + eta/2, 3/4)`.
pub fn u1(d: usize) -> Result<f64> {
    Ok((0.5 + eta(d, 1e-15)? / 2.0).max(0.75))
}

/// `eta(d)`, the epsilon-free limit of the bound for parts of bounded size.
pub fn u2(d: usize) -> Result<f64> {
    eta(d, 1e-15)
}

/// `lambda / d`.
pub fn spectral_upper(lambda: f64, d: usize) -> Result<f64> {
    if !(lambda >= 0.0) || d == 0 {
        return Err(invalid("need lambda >= 0 and d >= 1"));
    }
    Ok(lambda / d as f64)
}

/// `2 / sqrt(d)`.
pub fn friedman_upper(d: usize) -> Result<f64> {
    if d == 0 {
        return Err(invalid("d must be positive"));
    }
    Ok(2.0 / (d as f64).sqrt())
}

/// `max(1 - rho/d, 3/4)`.
pub fn trivial_upper(rho: f64, d: usize) -> Result<f64> {
    if !(rho >= 0.0) || d == 0 {
        return Err(invalid("need rho >= 0 and d >= 1"));
    }
    Ok((1.0 - rho / d as f64).max(0.75))
}

/// `1 - 2 rho/d`, for partitions whose parts are a vanishing fraction of `n`.
pub fn restricted_upper(rho: f64, d: usize) -> Result<f64> {
    if !(rho >= 0.0) || d == 0 {
        return Err(invalid("need rho >= 0 and d >= 1"));
    }
    Ok(1.0 - 2.0 * rho / d as f64)
}
