//! Per-cell quartiles of the evaluation counts.

use std::collections::BTreeMap;
use std::io::Write;

use csv::{Terminator, WriterBuilder};

use crate::error::{Error, Result};

use super::RunRecord;

pub const SUMMARY_HEADER: [&str; 6] = ["algorithm", "n", "median", "q1", "q3", "completed"];

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub algorithm: String,
    pub n: usize,
    /// Quartiles over completed runs; `None` when no run completed.
    pub median: Option<f64>,
    pub q1: Option<f64>,
    pub q3: Option<f64>,
    pub completed: usize,
    pub exhausted: usize,
}

/// Quantile of sorted data by linear interpolation between closest ranks:
/// position `h = (len - 1) q`, value `x[⌊h⌋] + (h - ⌊h⌋)(x[⌊h⌋+1] - x[⌊h⌋])`.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Groups records by `(algorithm, n)`. Exhausted runs are counted but
/// excluded from the quartiles.
pub fn summarize(records: &[RunRecord]) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::MissingData("no records to summarize".into()));
    }
    let mut cells: BTreeMap<(&str, usize), (Vec<f64>, usize)> = BTreeMap::new();
    for r in records {
        let cell = cells.entry((r.algorithm.as_str(), r.n)).or_default();
        match r.evaluations {
            Some(e) => cell.0.push(e as f64),
            None => cell.1 += 1,
        }
    }
    Ok(cells
        .into_iter()
        .map(|((algorithm, n), (mut done, exhausted))| {
            done.sort_by(f64::total_cmp);
            let q = |p| (!done.is_empty()).then(|| quantile(&done, p));
            SummaryRow {
                algorithm: algorithm.to_string(),
                n,
                median: q(0.5),
                q1: q(0.25),
                q3: q(0.75),
                completed: done.len(),
                exhausted,
            }
        })
        .collect())
}

/// Renders with at most 6 significant digits, no exponent and no
/// trailing zeros.
pub fn format_number(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            x.to_string()
        };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = 5 - magnitude;
    if decimals > 0 {
        let s = format!("{:.*}", decimals as usize, x);
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" {
            "0".into()
        } else {
            s.to_string()
        }
    } else {
        let scale = 10f64.powi(-decimals);
        format!("{:.0}", (x / scale).round() * scale)
    }
}

pub fn write_summary<W: Write>(out: W, rows: &[SummaryRow]) -> Result<()> {
    let mut w = WriterBuilder::new()
        .terminator(Terminator::Any(b'\n'))
        .from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(SUMMARY_HEADER).map_err(io)?;
    for r in rows {
        let f = |v: Option<f64>| v.map(format_number).unwrap_or_default();
        w.write_record([
            r.algorithm.clone(),
            r.n.to_string(),
            f(r.median),
            f(r.q1),
            f(r.q3),
            r.completed.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
