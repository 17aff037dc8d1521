//! Bound tables for ranges of `d` and `m`.

use std::io::Write;

use serde::Serialize;

use super::{pa, regular};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Parameter {
    D(usize),
    M(usize),
}

impl std::fmt::Display for Parameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parameter::D(d) => write!(f, "d={d}"),
            Parameter::M(m) => write!(f, "m={m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTable {
    pub parameter: Parameter,
    pub values: Vec<(String, f64)>,
    pub tol: f64,
}

impl BoundTable {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }
}

/// Rows `u1, u2, u3, u4, u4_k, friedman` per `d` (`d >= 3`) and
/// `l1, l2, pa_upper, mihail` per `m` (the last two for `m >= 2`).
pub fn bound_table(d_range: &[usize], m_range: &[usize], tol: f64) -> Result<Vec<BoundTable>> {
    let mut rows = Vec::new();
    for &d in d_range {
        let (value, k) = regular::u4(d, 200, tol)?;
        rows.push(BoundTable {
            parameter: Parameter::D(d),
            values: vec![
                ("u1".into(), regular::u1(d)?),
                ("u2".into(), regular::u2(d)?),
                ("u3".into(), regular::u3(d, tol)?),
                ("u4".into(), value),
                ("u4_k".into(), k as f64),
                ("friedman".into(), regular::friedman_upper(d)?),
            ],
            tol,
        });
    }
    for &m in m_range {
        let mut values = vec![
            ("l1".into(), pa::pa_lower_l1(m)?),
            ("l2".into(), pa::pa_lower_l2(m)?),
        ];
        if m >= 2 {
            values.push(("pa_upper".into(), pa::pa_upper(m)?));
            values.push(("mihail".into(), pa::mihail_expansion_lower(m)?));
        }
        rows.push(BoundTable {
            parameter: Parameter::M(m),
            values,
            tol,
        });
    }
    Ok(rows)
}

/// CSV with columns `param,name,value`.
pub fn write_bound_csv<W: Write>(mut w: W, rows: &[BoundTable]) -> Result<()> {
    writeln!(w, "param,name,value")?;
    for row in rows {
        for (name, value) in &row.values {
            writeln!(w, "{},{},{}", row.parameter, name, value)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let rows = bound_table(&[], &[1, 9], 1e-10).unwrap();
        let mut out = Vec::new();
        write_bound_csv(&mut out, &rows).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "param,name,value");
        assert_eq!(lines[1], "m=1,l1,1");
        assert_eq!(lines.len(), 1 + 2 + 4);
        assert!((rows[1].get("l1").unwrap() - 1.0 / 9.0).abs() < 1e-15);
    }
}
