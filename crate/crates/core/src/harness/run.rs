use std::fs;
use std::path::{Path, PathBuf};

use crate::dictionary::{Dictionary, MeasureKind};
use crate::error::{Error, Result};
use crate::kernel::NormRange;
use crate::learners::{ModelState, OnlineLearner};
use crate::numfmt::num;
use crate::spectral::{report_measure, SpectralReport, Violation};

use super::config::{DataSource, ExperimentConfig};
use super::data::{read_samples, write_samples};
use super::synth::{synthesize, Sample};

pub const RUN_CSV: &str = "run.csv";
pub const SPECTRAL_CSV: &str = "spectral.csv";
pub const DICTIONARY_TXT: &str = "dictionary.txt";
pub const PROBES_CSV: &str = "probes.csv";

pub const RUN_CSV_HEADER: &str = "t,prediction,error,admitted,m,alpha_sq_norm,psi_sq_norm";

/// One online step as recorded in `run.csv`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunRow {
    /// 1-based sample index.
    pub t: usize,
    pub prediction: f64,
    pub error: f64,
    pub admitted: bool,
    pub m: usize,
    pub alpha_sq_norm: f64,
    /// `αᵀ K̄ α = ‖ψ_t‖²_H`.
    pub psi_sq_norm: f64,
}

#[derive(Debug, Clone)]
pub struct RunRecord {
    pub rows: Vec<RunRow>,
    pub dictionary: Dictionary,
    pub state: ModelState,
    pub report: SpectralReport,
    /// `(point, ψ(point))` for every configured probe.
    pub probes: Vec<(Vec<f64>, f64)>,
}

impl RunRecord {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(RUN_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let row = [
                r.t.to_string(),
                num(r.prediction),
                num(r.error),
                (r.admitted as u8).to_string(),
                r.m.to_string(),
                num(r.alpha_sq_norm),
                num(r.psi_sq_norm),
            ];
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Mean squared prediction error over the last `fraction` of the rows.
    pub fn trailing_mse(&self, fraction: f64) -> f64 {
        let n = self.rows.len();
        let k = ((n as f64 * fraction).round() as usize).clamp(1, n.max(1));
        let tail = &self.rows[n - k..];
        tail.iter().map(|r| r.error * r.error).sum::<f64>() / tail.len() as f64
    }
}

pub fn load_samples(cfg: &ExperimentConfig) -> Result<Vec<Sample>> {
    match &cfg.data {
        DataSource::Csv(path) => read_samples(path),
        DataSource::Synthetic { generator, noise_std } => synthesize(*generator, cfg.seed, cfg.length, *noise_std),
    }
}

/// Norm range used for reports: the configured one, else measured on `dict`.
pub fn report_norm_range(cfg_range: Option<NormRange>, dict: &Dictionary) -> Result<NormRange> {
    match cfg_range {
        Some(r) => Ok(r),
        None => dict.kernel().norm_range(Some(dict.atoms())),
    }
}

/// Streams `samples` through a fresh learner and builds the final report.
/// Writes nothing.
pub fn run_samples(cfg: &ExperimentConfig, samples: &[Sample]) -> Result<RunRecord> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter("no samples to run".into()));
    }
    let dict = Dictionary::new(cfg.kernel, cfg.criterion);
    let mut learner = OnlineLearner::new(dict, cfg.learner)?;
    let mut rows = Vec::with_capacity(samples.len());
    for (i, s) in samples.iter().enumerate() {
        let out = learner.step(&s.x, s.y)?;
        let state = learner.state();
        rows.push(RunRow {
            t: i + 1,
            prediction: out.prediction,
            error: out.error,
            admitted: out.admitted,
            m: out.new_m,
            alpha_sq_norm: state.alpha_sq_norm(),
            psi_sq_norm: state.psi_sq_norm(learner.dictionary())?,
        });
    }
    let probes = cfg
        .probes
        .iter()
        .map(|p| learner.predict(p).map(|v| (p.clone(), v)))
        .collect::<Result<Vec<_>>>()?;
    let (dictionary, state) = learner.into_parts();
    let range = report_norm_range(cfg.norm_range, &dictionary)?;
    let report = SpectralReport::compute(&dictionary, &range, cfg.trials, cfg.seed)?;
    Ok(RunRecord { rows, dictionary, state, report, probes })
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Error::io(path, e))
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// Runs the configured experiment and writes `run.csv`, `spectral.csv`,
/// `dictionary.txt` and, when probes are configured, `probes.csv` to the
/// output directory.
pub fn run_online(cfg: &ExperimentConfig) -> Result<RunRecord> {
    let samples = load_samples(cfg)?;
    let record = run_samples(cfg, &samples)?;
    let dir = &cfg.output_dir;
    create_dir(dir)?;
    write(dir, RUN_CSV, &record.to_csv())?;
    write(dir, SPECTRAL_CSV, &record.report.to_csv())?;
    write(dir, DICTIONARY_TXT, &record.dictionary.to_text())?;
    if !record.probes.is_empty() {
        let d = record.probes[0].0.len();
        let mut text: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
        text.push("prediction".into());
        let mut out = text.join(",") + "\n";
        for (p, v) in &record.probes {
            let mut row: Vec<String> = p.iter().map(|&c| num(c)).collect();
            row.push(num(*v));
            out.push_str(&row.join(","));
            out.push('\n');
        }
        write(dir, PROBES_CSV, &out)?;
    }
    Ok(record)
}

/// Writes synthesized samples as CSV to `path`.
pub fn write_samples_to(samples: &[Sample], path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_samples(samples, file).map_err(|e| Error::io(path, std::io::Error::other(e)))
}

/// Report over a finished dictionary, plus the violations that decide the
/// `verify` exit status.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub report: SpectralReport,
    pub failing: Vec<Violation>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failing.is_empty()
    }
}

/// Whether a violation makes `verify` fail.
///
/// Geršgorin, distance and coherence violations do. Babel is excluded because
/// its admission threshold only holds per candidate. Approximation is
/// reported but excluded because its lower bound `δ²` is never below the
/// smallest eigenvalue: each atom's residual `1/[K̄⁻¹]_ii` is at least
/// `λ_min`, so the bound fails for nearly every dictionary with `m ≥ 2`.
pub fn counts_toward_exit(v: &Violation) -> bool {
    matches!(v.kind, None | Some(MeasureKind::Distance) | Some(MeasureKind::Coherence))
}

pub fn verify_dictionary(dict: &Dictionary, norm_range: Option<NormRange>, trials: usize, seed: u64) -> Result<VerifyOutcome> {
    let range = report_norm_range(norm_range, dict)?;
    let report = SpectralReport::compute(dict, &range, trials, seed)?;
    let failing = report.violations.iter().filter(|v| counts_toward_exit(v)).cloned().collect();
    Ok(VerifyOutcome { report, failing })
}

/// Resolves a run directory to its `dictionary.txt`; files pass through.
pub fn dictionary_path(input: &Path) -> PathBuf {
    if input.is_dir() {
        input.join(DICTIONARY_TXT)
    } else {
        input.to_path_buf()
    }
}

/// Loads the dictionary at `input`, verifies it and writes `spectral.csv` to
/// the configured output directory.
pub fn verify_path(input: &Path, cfg: &ExperimentConfig) -> Result<VerifyOutcome> {
    let dict = Dictionary::read_from_path(&dictionary_path(input))?;
    let outcome = verify_dictionary(&dict, cfg.norm_range, cfg.trials, cfg.seed)?;
    create_dir(&cfg.output_dir)?;
    write(&cfg.output_dir, SPECTRAL_CSV, &outcome.report.to_csv())?;
    Ok(outcome)
}

/// The four measures of `dict` as `measure,value` CSV.
pub fn measures_csv(dict: &Dictionary) -> Result<String> {
    if dict.is_empty() {
        return Err(Error::EmptyDictionary);
    }
    let mut out = String::from("measure,value\n");
    for kind in MeasureKind::ALL {
        out.push_str(&format!("{kind},{}\n", num(report_measure(dict, kind)?)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::Criterion;
    use crate::harness::config::ConfigBuilder;
    use crate::kernel::Kernel;

    fn cfg(pairs: &[(&str, &str)]) -> ExperimentConfig {
        let mut b = ConfigBuilder::new();
        for (k, v) in pairs {
            b.set(k, v).unwrap();
        }
        b.build().unwrap()
    }

    #[test]
    fn single_sample_run() {
        let c = cfg(&[("length", "1"), ("trials", "10")]);
        let samples = load_samples(&c).unwrap();
        let r = run_samples(&c, &samples).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].m, 1);
        assert_eq!(r.rows[0].error, samples[0].y);
        assert!(r.rows[0].admitted);
    }

    #[test]
    fn run_rows_are_consistent() {
        let c = cfg(&[("length", "300"), ("trials", "50")]);
        let r = run_samples(&c, &load_samples(&c).unwrap()).unwrap();
        let mut prev = 0;
        for row in &r.rows {
            assert!(row.m >= prev && row.m <= row.t);
            assert_eq!(row.admitted, row.m > prev);
            prev = row.m;
        }
        assert!(prev < 300);
        let csv = r.to_csv();
        assert_eq!(csv.lines().next().unwrap(), RUN_CSV_HEADER);
        assert_eq!(csv.lines().count(), 301);
    }

    #[test]
    fn measures_of_orthonormal_dictionary() {
        let d = Dictionary::from_atoms(
            Kernel::Linear,
            Criterion::new(MeasureKind::Approximation, 1.0).unwrap(),
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        )
        .unwrap();
        assert_eq!(
            measures_csv(&d).unwrap(),
            "measure,value\ndistance,1.0\napproximation,1.0\ncoherence,0.0\nbabel,0.0\n"
        );
        let v = verify_dictionary(&d, None, 100, 0).unwrap();
        assert!(v.passed());
        assert!(v.report.violations.is_empty());
    }

    #[test]
    fn exit_policy() {
        let pair = Dictionary::from_atoms(
            Kernel::Linear,
            Criterion::new(MeasureKind::Coherence, 1.0).unwrap(),
            vec![vec![1.0, 0.0], vec![0.5, 0.75f64.sqrt()]],
        )
        .unwrap();
        let v = verify_dictionary(&pair, None, 100, 0).unwrap();
        assert!(!v.report.violations.is_empty());
        assert!(v.passed());
    }
}
