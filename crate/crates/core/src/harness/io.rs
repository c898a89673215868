//! CSV formats.
//!
//! - dataset: header `id,l,r,w`, one interval per line
//! - workload: header `s,k`, one query per line
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! written file parses back to identical values.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{HarnessError, Result};
use crate::interval::{Dataset, Interval, Query, WeightOrder};

const DATASET_HEADER: [&str; 4] = ["id", "l", "r", "w"];
const WORKLOAD_HEADER: [&str; 2] = ["s", "k"];

/// A list of queries.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Workload {
    pub queries: Vec<Query>,
}

impl Workload {
    /// The shared `k` if every query uses the same one.
    pub fn uniform_k(&self) -> Option<usize> {
        let k = self.queries.first()?.k;
        self.queries.iter().all(|q| q.k == k).then_some(k)
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_dataset(path: &Path, order: WeightOrder) -> Result<Dataset> {
    parse_dataset(open(path)?, &path.display().to_string(), order)
}

pub fn read_workload(path: &Path) -> Result<Workload> {
    parse_workload(open(path)?, &path.display().to_string())
}

fn parse_error(label: &str, line: u64, message: impl Into<String>) -> HarnessError {
    HarnessError::Parse {
        path: label.to_string(),
        line,
        message: message.into(),
    }
}

/// Reads rows, checks the header, and returns `(line, fields)` pairs.
fn rows<R: Read>(reader: R, label: &str, header: &[&str]) -> Result<Vec<(u64, csv::StringRecord)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let found = rdr
        .headers()
        .map_err(|e| parse_error(label, 1, e.to_string()))?
        .clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(parse_error(
            label,
            1,
            format!("expected header {:?}, found {:?}", header.join(","), found.iter().collect::<Vec<_>>().join(",")),
        ));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(label, line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        out.push((line, rec));
    }
    Ok(out)
}

fn field<T: std::str::FromStr>(label: &str, line: u64, rec: &csv::StringRecord, i: usize, name: &str) -> Result<T> {
    let raw = rec.get(i).unwrap_or("");
    raw.parse()
        .map_err(|_| parse_error(label, line, format!("invalid {name} {raw:?}")))
}

pub fn parse_dataset<R: Read>(reader: R, label: &str, order: WeightOrder) -> Result<Dataset> {
    let rows = rows(reader, label, &DATASET_HEADER)?;
    let mut records = Vec::with_capacity(rows.len());
    for (line, rec) in &rows {
        let line = *line;
        records.push((
            field::<u64>(label, line, rec, 0, "id")?,
            field::<f64>(label, line, rec, 1, "l")?,
            field::<f64>(label, line, rec, 2, "r")?,
            field::<f64>(label, line, rec, 3, "w")?,
        ));
    }
    Dataset::ingest(records, order).map_err(|e| parse_error(label, rows[e.index].0, e.to_string()))
}

pub fn parse_workload<R: Read>(reader: R, label: &str) -> Result<Workload> {
    let mut queries = Vec::new();
    for (line, rec) in rows(reader, label, &WORKLOAD_HEADER)? {
        let s: f64 = field(label, line, &rec, 0, "s")?;
        let k: usize = field(label, line, &rec, 1, "k")?;
        if !s.is_finite() {
            return Err(parse_error(label, line, format!("non-finite s {s}")));
        }
        let q = Query::try_new(s, k).ok_or_else(|| parse_error(label, line, "k must be at least 1"))?;
        queries.push(q);
    }
    Ok(Workload { queries })
}

/// Writes intervals with their weights as stored.
pub fn write_dataset<W: Write>(out: W, intervals: &[Interval]) -> std::io::Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "{}", DATASET_HEADER.join(","))?;
    for x in intervals {
        writeln!(out, "{},{},{},{}", x.id, x.l, x.r, x.w)?;
    }
    out.flush()
}

pub fn write_workload<W: Write>(out: W, workload: &Workload) -> std::io::Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "{}", WORKLOAD_HEADER.join(","))?;
    for q in &workload.queries {
        writeln!(out, "{},{}", q.s, q.k)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_dataset() {
        let text = "id,l,r,w\n1,1,5,10\n2,3.5,7,20.25\n";
        let d = parse_dataset(text.as_bytes(), "d1.csv", WeightOrder::Max).unwrap();
        assert_eq!(d.intervals()[1], Interval::new(2, 3.5, 7.0, 20.25));
    }

    #[test]
    fn validation_error_names_line() {
        let text = "id,l,r,w\n2,0,1,3\n1,5,1,10\n";
        let err = parse_dataset(text.as_bytes(), "bad.csv", WeightOrder::Max).unwrap_err();
        assert_eq!(err.to_string(), "bad.csv: line 3: l > r at id 1");
    }

    #[test]
    fn parse_errors_name_line() {
        let err = parse_dataset("id,l,r,w\n1,x,2,3\n".as_bytes(), "f", WeightOrder::Max).unwrap_err();
        assert_eq!(err.to_string(), "f: line 2: invalid l \"x\"");

        let err = parse_dataset("a,b\n".as_bytes(), "f", WeightOrder::Max).unwrap_err();
        assert!(err.to_string().starts_with("f: line 1: expected header"));

        let err = parse_dataset("id,l,r,w\n1,0,1\n".as_bytes(), "f", WeightOrder::Max).unwrap_err();
        assert!(err.to_string().starts_with("f: line 2:"), "{err}");

        let err = parse_workload("s,k\n1.5,0\n".as_bytes(), "q").unwrap_err();
        assert_eq!(err.to_string(), "q: line 2: k must be at least 1");
    }

    #[test]
    fn empty_workload_keeps_header() {
        let mut buf = Vec::new();
        write_workload(&mut buf, &Workload::default()).unwrap();
        assert_eq!(buf, b"s,k\n");
        assert_eq!(parse_workload(&buf[..], "q").unwrap(), Workload::default());
    }

    #[test]
    fn floats_round_trip() {
        let xs = vec![Interval::new(7, 0.1, 1.0 / 3.0, -4999.123456789)];
        let mut buf = Vec::new();
        write_dataset(&mut buf, &xs).unwrap();
        let d = parse_dataset(&buf[..], "x", WeightOrder::Max).unwrap();
        assert_eq!(d.intervals(), &xs[..]);
    }
}
