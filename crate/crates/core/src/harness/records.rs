//! Records CSV: one line per run, LF line endings, `evaluations` empty
//! when the budget ran out.

use std::io::{Read, Write};

use csv::{ReaderBuilder, Terminator, WriterBuilder};

use crate::error::{Error, Result};

use super::RunRecord;

pub const RECORDS_HEADER: [&str; 7] = [
    "algorithm",
    "n",
    "run",
    "seed",
    "evaluations",
    "exhausted",
    "wall_ms",
];

fn csv_error(err: csv::Error) -> Error {
    Error::Io(err.to_string())
}

pub fn write_records<W: Write>(out: W, records: &[RunRecord]) -> Result<()> {
    let mut w = WriterBuilder::new()
        .terminator(Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(RECORDS_HEADER).map_err(csv_error)?;
    for r in records {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        w.write_record([
            r.algorithm.clone(),
            r.n.to_string(),
            r.run.to_string(),
            r.seed.to_string(),
            opt(r.evaluations),
            r.exhausted.to_string(),
            opt(r.wall_ms),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut reader = ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = reader
        .headers()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    if header.iter().ne(RECORDS_HEADER) {
        return Err(Error::InvalidArgument(format!(
            "unexpected header {:?}",
            header.iter().collect::<Vec<_>>()
        )));
    }
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Error::InvalidArgument(format!("line {line}: {e}")))?;
        let bad = |field: &str| Error::InvalidArgument(format!("line {line}: bad {field}"));
        let num =
            |idx: usize, field: &str| -> Result<u64> { row[idx].parse().map_err(|_| bad(field)) };
        let optional = |idx: usize, field: &str| -> Result<Option<u64>> {
            if row[idx].is_empty() {
                Ok(None)
            } else {
                num(idx, field).map(Some)
            }
        };
        let exhausted = match &row[5] {
            "true" => true,
            "false" => false,
            _ => return Err(bad("exhausted")),
        };
        let evaluations = optional(4, "evaluations")?;
        if exhausted == evaluations.is_some() {
            return Err(bad("evaluations/exhausted combination"));
        }
        records.push(RunRecord {
            algorithm: row[0].to_string(),
            n: num(1, "n")? as usize,
            run: num(2, "run")? as usize,
            seed: num(3, "seed")?,
            evaluations,
            exhausted,
            wall_ms: optional(6, "wall_ms")?,
        });
    }
    Ok(records)
}
