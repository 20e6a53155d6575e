//! Sample files: one row per sample, inputs first and the target last.
//!
//! A first row that does not parse as numbers is taken as a header.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::numfmt::num;

use super::synth::Sample;

pub fn read_samples(path: &Path) -> Result<Vec<Sample>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_samples(file, &path.display().to_string())
}

/// Parses samples from `reader`; `origin` names the source in diagnostics.
pub fn parse_samples(reader: impl Read, origin: &str) -> Result<Vec<Sample>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut out = Vec::new();
    let mut width = None;
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse {
            path: origin.to_string(),
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(i + 1, |p| p.line() as usize);
        let err = |message: String| Error::Parse { path: origin.to_string(), line, message };
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        let values = match parsed {
            Ok(v) => v,
            Err(_) if i == 0 => continue,
            Err(e) => return Err(err(format!("not a number: {e}"))),
        };
        if values.len() < 2 {
            return Err(err(format!("need at least one input and a target, found {} column(s)", values.len())));
        }
        if let Some(w) = width {
            if values.len() != w {
                return Err(err(format!("expected {w} columns, found {}", values.len())));
            }
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(err("non-finite value".into()));
        }
        width = Some(values.len());
        let (x, y) = values.split_at(values.len() - 1);
        out.push(Sample { x: x.to_vec(), y: y[0] });
    }
    if out.is_empty() {
        return Err(Error::Parse { path: origin.to_string(), line: 0, message: "no samples".into() });
    }
    Ok(out)
}

/// Writes a header `x1,…,xd,y` and one row per sample.
pub fn write_samples(samples: &[Sample], writer: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let d = samples.first().map_or(1, |s| s.x.len());
    let mut header: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    header.push("y".into());
    w.write_record(&header)?;
    for s in samples {
        let mut row: Vec<String> = s.x.iter().map(|&v| num(v)).collect();
        row.push(num(s.y));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
