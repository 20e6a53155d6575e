//! Plain-text dictionary files.
//!
//! ```text
//! kdict-dictionary v1
//! kernel gaussian sigma=0.5
//! criterion coherence threshold=0.5 max_atoms=200
//! dim 2
//! atoms 3
//! 0.25 -1.5
//! 1.0 0.125
//! -2.0 3.0
//! ```
//!
//! The kernel line is `kernel linear`, `kernel polynomial degree=P offset=C`
//! or `kernel gaussian sigma=S`; `max_atoms` is optional. Each atom is one
//! line of whitespace-separated decimals written in shortest round-trip form,
//! so a write/read cycle reproduces atoms (and hence the Gram matrix)
//! bit for bit. Blank lines and lines starting with `#` are ignored.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use super::{Criterion, Dictionary, MeasureKind};
use crate::error::{Error, Result};
use crate::kernel::Kernel;

const MAGIC: &str = "kdict-dictionary v1";

impl Dictionary {
    /// Serializes to the text format described in this module.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(MAGIC);
        out.push('\n');
        out.push_str(&format!("kernel {}\n", self.kernel));
        let c = &self.criterion;
        out.push_str(&format!("criterion {} threshold={:?}", c.kind, c.threshold));
        if let Some(cap) = c.max_atoms {
            out.push_str(&format!(" max_atoms={cap}"));
        }
        out.push('\n');
        out.push_str(&format!("dim {}\n", self.dim().unwrap_or(0)));
        out.push_str(&format!("atoms {}\n", self.atoms.len()));
        for a in &self.atoms {
            let row: Vec<String> = a.iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn write_to_path(&self, path: &Path) -> Result<()> {
        let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        f.write_all(self.to_text().as_bytes()).map_err(|e| Error::io(path, e))
    }

    /// Parses the text format. `origin` names the source in error messages.
    pub fn from_text(text: &str, origin: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            path: origin.to_string(),
            line,
            message,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let mut next = |what: &str| {
            lines.next().ok_or_else(|| Error::Parse {
                path: origin.to_string(),
                line: 0,
                message: format!("unexpected end of file, expected {what}"),
            })
        };

        let (ln, magic) = next("header")?;
        if magic != MAGIC {
            return Err(err(ln, format!("expected `{MAGIC}`, found `{magic}`")));
        }

        let (ln, kline) = next("kernel line")?;
        let kernel = parse_kernel(kline).map_err(|m| err(ln, m))?;

        let (ln, cline) = next("criterion line")?;
        let criterion = parse_criterion(cline).map_err(|m| err(ln, m))?;

        let (ln, dline) = next("dim line")?;
        let dim: usize = keyword_value(dline, "dim").map_err(|m| err(ln, m))?;

        let (ln, aline) = next("atoms line")?;
        let count: usize = keyword_value(aline, "atoms").map_err(|m| err(ln, m))?;

        let mut atoms = Vec::with_capacity(count);
        for k in 0..count {
            let (ln, row) = next(&format!("atom {} of {count}", k + 1))?;
            let vals: std::result::Result<Vec<f64>, _> =
                row.split_whitespace().map(str::parse::<f64>).collect();
            let vals = vals.map_err(|e| err(ln, format!("bad number: {e}")))?;
            if vals.len() != dim {
                return Err(err(ln, format!("expected {dim} values, found {}", vals.len())));
            }
            atoms.push(vals);
        }
        if let Ok((ln, extra)) = next("") {
            return Err(err(ln, format!("trailing content `{extra}`")));
        }
        Dictionary::from_atoms(kernel, criterion, atoms)
    }

    pub fn read_from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Dictionary::from_text(&text, &path.display().to_string())
    }
}

fn keyword_value<T: std::str::FromStr>(line: &str, keyword: &str) -> std::result::Result<T, String>
where
    T::Err: std::fmt::Display,
{
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == keyword => {
            v.parse::<T>().map_err(|e| format!("bad `{keyword}` value `{v}`: {e}"))
        }
        _ => Err(format!("expected `{keyword} <value>`, found `{line}`")),
    }
}

fn key_values<'a>(parts: impl Iterator<Item = &'a str>) -> std::result::Result<HashMap<&'a str, &'a str>, String> {
    parts
        .map(|p| p.split_once('=').ok_or_else(|| format!("expected key=value, found `{p}`")))
        .collect()
}

fn get<T: std::str::FromStr>(kv: &HashMap<&str, &str>, key: &str) -> std::result::Result<T, String>
where
    T::Err: std::fmt::Display,
{
    let v = kv.get(key).ok_or_else(|| format!("missing `{key}=`"))?;
    v.parse::<T>().map_err(|e| format!("bad `{key}` value `{v}`: {e}"))
}

fn parse_kernel(line: &str) -> std::result::Result<Kernel, String> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some("kernel") {
        return Err(format!("expected kernel line, found `{line}`"));
    }
    let family = parts.next().ok_or("missing kernel family")?;
    let kv = key_values(parts)?;
    let k = match family {
        "linear" => Kernel::Linear,
        "polynomial" => Kernel::polynomial(get(&kv, "degree")?, get(&kv, "offset")?)
            .map_err(|e| e.to_string())?,
        "gaussian" => Kernel::gaussian(get(&kv, "sigma")?).map_err(|e| e.to_string())?,
        other => return Err(format!("unknown kernel family `{other}`")),
    };
    Ok(k)
}

fn parse_criterion(line: &str) -> std::result::Result<Criterion, String> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some("criterion") {
        return Err(format!("expected criterion line, found `{line}`"));
    }
    let kind: MeasureKind = parts
        .next()
        .ok_or("missing criterion kind")?
        .parse()
        .map_err(|e: Error| e.to_string())?;
    let kv = key_values(parts)?;
    let mut c = Criterion::new(kind, get(&kv, "threshold")?).map_err(|e| e.to_string())?;
    if kv.contains_key("max_atoms") {
        c = c.with_max_atoms(get(&kv, "max_atoms")?).map_err(|e| e.to_string())?;
    }
    Ok(c)
}
