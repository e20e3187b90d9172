//! Joins a computed dataset against a reference table and summarizes the
//! deviations.

use std::fs;
use std::path::Path;

use crate::CliError;

/// Tolerance for treating two temperatures or Mach numbers as equal.
const KEY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CsvData {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvData {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| CliError::Args("table has no header row".into()))?;
        let columns: Vec<String> = header.split(',').map(|c| c.trim().to_string()).collect();
        let mut rows = Vec::new();
        for line in lines {
            let row: Vec<String> = line.split(',').map(|c| c.trim().to_string()).collect();
            if row.len() != columns.len() {
                return Err(CliError::Args(format!("row {line:?} has {} fields, expected {}", row.len(), columns.len())));
            }
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn column(&self, names: &[&str]) -> Option<usize> {
        names.iter().find_map(|n| self.columns.iter().position(|c| c == n))
    }

    pub fn number(&self, row: usize, col: usize) -> Result<f64, CliError> {
        let v = &self.rows[row][col];
        v.parse::<f64>().map_err(|_| CliError::Args(format!("column {}: not a number: {v:?}", self.columns[col])))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub mach: f64,
    pub temperature: Option<f64>,
    pub quantity: &'static str,
    pub reference: f64,
    pub computed: f64,
    pub residual: f64,
    /// The computed value was interpolated or taken from the nearest Mach
    /// number rather than matched exactly.
    pub interpolated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonStats {
    pub n_points: usize,
    pub rms_deviation: f64,
    pub max_deviation: f64,
    pub residuals: Vec<Residual>,
}

impl ComparisonStats {
    fn from_residuals(residuals: Vec<Residual>) -> Self {
        let n = residuals.len();
        let sum_sq: f64 = residuals.iter().map(|r| r.residual * r.residual).sum();
        let max = residuals.iter().map(|r| r.residual.abs()).fold(0.0, f64::max);
        Self {
            n_points: n,
            rms_deviation: if n == 0 { 0.0 } else { (sum_sq / n as f64).sqrt() },
            max_deviation: max,
            residuals,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub pressure: ComparisonStats,
    /// Present when both tables carry a temperature value column.
    pub temperature: Option<ComparisonStats>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JoinOptions {
    pub by_temperature: bool,
    pub join_tol: f64,
    pub delta: Option<f64>,
}

struct Series {
    // (T key, mach, p, T value)
    points: Vec<(Option<f64>, f64, f64, Option<f64>)>,
}

fn computed_series(data: &CsvData, opts: &JoinOptions) -> Result<Series, CliError> {
    let mach = data.column(&["mach"]).ok_or_else(|| CliError::Args("computed table lacks a mach column".into()))?;
    let p = data
        .column(&["p", "p_sharp", "p_star"])
        .ok_or_else(|| CliError::Args("computed table lacks a pressure column".into()))?;
    let tkey = if opts.by_temperature {
        Some(data.column(&["T"]).ok_or_else(|| CliError::Args("computed table lacks a T column".into()))?)
    } else {
        None
    };
    let tval = data.column(&["T_value", "T_sharp"]);
    let delta = data.column(&["delta"]);
    if let (Some(dc), None) = (delta, opts.delta) {
        let mut seen: Vec<f64> = Vec::new();
        for r in 0..data.rows.len() {
            let d = data.number(r, dc)?;
            if !seen.iter().any(|s| (s - d).abs() <= KEY_EPS) {
                seen.push(d);
            }
        }
        if seen.len() > 1 {
            return Err(CliError::Args("computed table holds several deltas; select one with --delta".into()));
        }
    }
    let mut points = Vec::new();
    for r in 0..data.rows.len() {
        if let (Some(dc), Some(want)) = (delta, opts.delta) {
            if (data.number(r, dc)? - want).abs() > KEY_EPS {
                continue;
            }
        }
        let t = tkey.map(|c| data.number(r, c)).transpose()?;
        let tv = tval.map(|c| data.number(r, c)).transpose()?;
        points.push((t, data.number(r, mach)?, data.number(r, p)?, tv));
    }
    points.sort_by(|a, b| {
        a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal).then(a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(Series { points })
}

// Computed (p, T value, interpolated) at `mach` along one temperature slice.
fn lookup(slice: &[(f64, f64, Option<f64>)], mach: f64, tol: f64) -> Option<(f64, Option<f64>, bool)> {
    if let Some(hit) = slice.iter().find(|(m, _, _)| (m - mach).abs() <= KEY_EPS) {
        return Some((hit.1, hit.2, false));
    }
    let above = slice.iter().position(|(m, _, _)| *m > mach);
    if let Some(j) = above.filter(|j| *j > 0) {
        let (a, b) = (slice[j - 1], slice[j]);
        if (mach - a.0).min(b.0 - mach) <= tol {
            let w = (mach - a.0) / (b.0 - a.0);
            let tv = match (a.2, b.2) {
                (Some(x), Some(y)) => Some(x + w * (y - x)),
                _ => None,
            };
            return Some((a.1 + w * (b.1 - a.1), tv, true));
        }
    }
    let nearest = slice.iter().min_by(|x, y| (x.0 - mach).abs().partial_cmp(&(y.0 - mach).abs()).unwrap_or(std::cmp::Ordering::Equal))?;
    ((nearest.0 - mach).abs() <= tol).then_some((nearest.1, nearest.2, true))
}

pub fn compare(reference: &CsvData, computed: &CsvData, opts: &JoinOptions) -> Result<Comparison, CliError> {
    let rm = reference.column(&["mach"]).ok_or_else(|| CliError::Args("reference lacks a mach column".into()))?;
    let rp = reference.column(&["p"]).ok_or_else(|| CliError::Args("reference lacks a p column".into()))?;
    let rt = if opts.by_temperature {
        Some(reference.column(&["T"]).ok_or_else(|| CliError::Args("reference lacks a T column".into()))?)
    } else {
        None
    };
    let rtv = reference.column(&["T_value"]);
    let series = computed_series(computed, opts)?;
    let mut p_res = Vec::new();
    let mut t_res = Vec::new();
    let mut any_tv = false;
    for r in 0..reference.rows.len() {
        let mach = reference.number(r, rm)?;
        let t = rt.map(|c| reference.number(r, c)).transpose()?;
        let slice: Vec<(f64, f64, Option<f64>)> = series
            .points
            .iter()
            .filter(|(tk, ..)| match (tk, t) {
                (Some(a), Some(b)) => (a - b).abs() <= KEY_EPS,
                _ => true,
            })
            .map(|(_, m, p, tv)| (*m, *p, *tv))
            .collect();
        let Some((p, tv, interpolated)) = lookup(&slice, mach, opts.join_tol) else {
            continue;
        };
        let p_ref = reference.number(r, rp)?;
        p_res.push(Residual { mach, temperature: t, quantity: "p", reference: p_ref, computed: p, residual: p - p_ref, interpolated });
        if let (Some(c), Some(tv)) = (rtv, tv) {
            any_tv = true;
            let t_ref = reference.number(r, c)?;
            t_res.push(Residual { mach, temperature: t, quantity: "T", reference: t_ref, computed: tv, residual: tv - t_ref, interpolated });
        }
    }
    if p_res.is_empty() {
        return Err(CliError::Numerical("no reference row could be joined with the computed data".into()));
    }
    Ok(Comparison {
        pressure: ComparisonStats::from_residuals(p_res),
        temperature: any_tv.then(|| ComparisonStats::from_residuals(t_res)),
    })
}
