//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # comments start with '#'
//! generator = sinc1d
//! length    = 1000
//! kernel    = gaussian
//! sigma     = 0.5
//! criterion = coherence
//! threshold = 0.5
//! algo      = nlms
//! eta       = 0.5
//! ```
//!
//! Later assignments override earlier ones, so command-line flags are
//! applied with [`ConfigBuilder::set`] after the file has been read.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::dictionary::{Criterion, MeasureKind};
use crate::error::{Error, Result};
use crate::kernel::{Kernel, NormRange};
use crate::learners::{Algorithm, LearnerConfig};
use crate::spectral::DEFAULT_TRIALS;

use super::synth::Generator;

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_LENGTH: usize = 1000;

/// Every recognised key with a one-line description.
pub const KEYS: &[(&str, &str)] = &[
    ("data", "CSV file of samples (columns x1..xd, y); overrides generator"),
    ("generator", "synthetic source: sinc1d or narma2 (default sinc1d)"),
    ("noise", "target noise standard deviation (default 0.01)"),
    ("seed", "seed for synthesis and isometry sampling (default 1)"),
    ("length", "number of synthetic samples (default 1000)"),
    ("kernel", "linear, polynomial or gaussian (default gaussian)"),
    ("sigma", "gaussian bandwidth (default 0.5)"),
    ("degree", "polynomial degree (default 2)"),
    ("offset", "polynomial offset c (default 1)"),
    ("criterion", "distance, approximation, coherence or babel (default coherence)"),
    ("threshold", "delta or gamma of the criterion (default 0.5)"),
    ("max_atoms", "hard cap on the dictionary size"),
    ("algo", "lms, lms-gram, nlms or functional (default nlms)"),
    ("eta", "step size (default 0.5)"),
    ("eps", "regularization (default 1e-6)"),
    ("trials", "random coefficient vectors per isometry check (default 10000)"),
    ("r_sq", "lower kernel norm bound r^2 (with big_r_sq)"),
    ("big_r_sq", "upper kernel norm bound R^2 (with r_sq)"),
    ("probe", "evaluation points, ';'-separated, coordinates space-separated"),
    ("out", "output directory (default out)"),
];

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Csv(PathBuf),
    Synthetic { generator: Generator, noise_std: f64 },
}

/// A validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub data: DataSource,
    pub seed: u64,
    pub length: usize,
    pub kernel: Kernel,
    pub criterion: Criterion,
    pub learner: LearnerConfig,
    pub trials: usize,
    /// Norm range for the spectral report; measured on the atoms when absent.
    pub norm_range: Option<NormRange>,
    pub probes: Vec<Vec<f64>>,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ConfigBuilder::new().build().expect("defaults are valid")
    }
}

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    origin: String,
}

/// Raw assignments, validated by [`build`](Self::build).
#[derive(Debug, Clone, Default)]
pub struct ConfigBuilder {
    entries: BTreeMap<String, Entry>,
}

impl ConfigBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut b = Self::new();
        b.read_str(&text, &path.display().to_string())?;
        Ok(b)
    }

    /// Applies every assignment in `text`; `origin` names it in diagnostics.
    pub fn read_str(&mut self, text: &str, origin: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    path: origin.to_string(),
                    line: i + 1,
                    message: format!("expected `key = value`, found `{line}`"),
                });
            };
            let key = key.trim();
            if !KEYS.iter().any(|(k, _)| *k == key) {
                return Err(Error::Parse {
                    path: origin.to_string(),
                    line: i + 1,
                    message: format!("unknown key `{key}`"),
                });
            }
            self.entries.insert(
                key.to_string(),
                Entry { value: value.trim().to_string(), origin: format!("{origin}:{}", i + 1) },
            );
        }
        Ok(())
    }

    /// Sets `key`, replacing any earlier value.
    pub fn set(&mut self, key: &str, value: impl ToString) -> Result<()> {
        if !KEYS.iter().any(|(k, _)| *k == key) {
            return Err(Error::config(key, "unknown key"));
        }
        self.entries
            .insert(key.to_string(), Entry { value: value.to_string(), origin: "command line".into() });
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.value.as_str())
    }

    fn parse<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.opt(key)?.unwrap_or(default))
    }

    fn opt<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.entries.get(key) {
            None => Ok(None),
            Some(e) => e
                .value
                .parse()
                .map(Some)
                .map_err(|err| Error::config(key, format!("`{}` ({}): {err}", e.value, e.origin))),
        }
    }

    // Wraps errors from typed constructors with the offending key.
    fn field<T>(&self, key: &str, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::InvalidParameter(msg) => {
                let origin = self.entries.get(key).map(|e| e.origin.as_str()).unwrap_or("default");
                Error::config(key, format!("{msg} ({origin})"))
            }
            other => other,
        })
    }

    pub fn build(&self) -> Result<ExperimentConfig> {
        let data = match self.get("data") {
            Some(path) => DataSource::Csv(PathBuf::from(path)),
            None => {
                let generator = self.parse("generator", Generator::Sinc1d)?;
                let noise_std: f64 = self.parse("noise", 0.01)?;
                if !(noise_std >= 0.0) || !noise_std.is_finite() {
                    return Err(Error::config("noise", format!("must be finite and ≥ 0, got {noise_std}")));
                }
                DataSource::Synthetic { generator, noise_std }
            }
        };
        let seed = self.parse("seed", DEFAULT_SEED)?;
        let length: usize = self.parse("length", DEFAULT_LENGTH)?;
        if length == 0 {
            return Err(Error::config("length", "must be ≥ 1"));
        }

        let kernel = match self.get("kernel").unwrap_or("gaussian") {
            "linear" => Kernel::linear(),
            "polynomial" => {
                let degree = self.parse("degree", 2u32)?;
                let offset = self.parse("offset", 1.0)?;
                self.field("degree", Kernel::polynomial(degree, offset))?
            }
            "gaussian" => self.field("sigma", Kernel::gaussian(self.parse("sigma", 0.5)?))?,
            other => {
                return Err(Error::config(
                    "kernel",
                    format!("unknown kernel `{other}` (valid: linear, polynomial, gaussian)"),
                ))
            }
        };

        let kind: MeasureKind = self.field("criterion", self.parse_kind())?;
        let threshold = self.parse("threshold", 0.5)?;
        let mut criterion = self.field("threshold", Criterion::new(kind, threshold))?;
        if let Some(cap) = self.opt::<usize>("max_atoms")? {
            criterion = self.field("max_atoms", criterion.with_max_atoms(cap))?;
        }

        let algorithm: Algorithm = self.field("algo", self.get("algo").unwrap_or("nlms").parse())?;
        let eta = self.parse("eta", 0.5)?;
        let eps = self.parse("eps", 1e-6)?;
        let learner = self.field("eta", LearnerConfig::new(algorithm, eta, eps))?;

        let trials: usize = self.parse("trials", DEFAULT_TRIALS)?;
        if trials == 0 {
            return Err(Error::config("trials", "must be ≥ 1"));
        }
        let norm_range = match (self.opt::<f64>("r_sq")?, self.opt::<f64>("big_r_sq")?) {
            (None, None) => None,
            (Some(r), Some(rr)) => Some(self.field("r_sq", NormRange::user_supplied(r, rr))?),
            _ => return Err(Error::config("r_sq", "r_sq and big_r_sq must be given together")),
        };
        let probes = match self.get("probe") {
            None => Vec::new(),
            Some(text) => parse_probes(text).map_err(|m| Error::config("probe", m))?,
        };
        let output_dir = PathBuf::from(self.get("out").unwrap_or("out"));

        Ok(ExperimentConfig {
            data,
            seed,
            length,
            kernel,
            criterion,
            learner,
            trials,
            norm_range,
            probes,
            output_dir,
        })
    }

    fn parse_kind(&self) -> Result<MeasureKind> {
        self.get("criterion").unwrap_or("coherence").parse()
    }
}

fn parse_probes(text: &str) -> std::result::Result<Vec<Vec<f64>>, String> {
    let mut out = Vec::new();
    for (i, chunk) in text.split(';').enumerate() {
        let point: std::result::Result<Vec<f64>, _> = chunk.split_whitespace().map(str::parse::<f64>).collect();
        match point {
            Ok(p) if !p.is_empty() && p.iter().all(|v| v.is_finite()) => out.push(p),
            Ok(_) => return Err(format!("point {} is empty or not finite", i + 1)),
            Err(e) => return Err(format!("point {}: {e}", i + 1)),
        }
    }
    if out.iter().any(|p| p.len() != out[0].len()) {
        return Err("probe points differ in dimension".into());
    }
    Ok(out)
}
