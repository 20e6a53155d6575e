use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kdict::harness::{
    self, dictionary_path, measures_csv, run_online, synthesize, verify_path, ConfigBuilder, DataSource,
};
use kdict::{Dictionary, Error};

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

/// Sparse kernel dictionaries for online regression, with spectral bound checks.
#[derive(Parser, Debug)]
#[command(name = "kdict", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stream samples through an online learner; write run.csv, spectral.csv and dictionary.txt.
    Run(Overrides),
    /// Recompute measures and bounds for a dictionary file or run directory.
    Verify {
        /// Dictionary file, or a run directory containing dictionary.txt.
        input: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Write a synthetic data set as CSV (to stdout unless --out is given).
    Synthesize {
        /// Generator name: sinc1d or narma2.
        name: Option<String>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Print the four sparsity measures of a dictionary file or run directory.
    Measure {
        input: PathBuf,
    },
}

#[derive(Args, Debug, Default)]
struct Overrides {
    /// Flat key=value configuration file; flags override its values.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, value_parser = ["distance", "approximation", "coherence", "babel"])]
    criterion: Option<String>,
    /// Criterion threshold (delta or gamma).
    #[arg(long, value_name = "R")]
    threshold: Option<f64>,
    #[arg(long, value_parser = ["linear", "polynomial", "gaussian"])]
    kernel: Option<String>,
    #[arg(long, value_name = "R")]
    sigma: Option<f64>,
    #[arg(long, value_name = "N")]
    degree: Option<u32>,
    #[arg(long, value_name = "R")]
    offset: Option<f64>,
    #[arg(long, value_parser = ["lms", "lms-gram", "nlms", "functional"])]
    algo: Option<String>,
    #[arg(long, value_name = "R")]
    eta: Option<f64>,
    #[arg(long, value_name = "R")]
    eps: Option<f64>,
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    #[arg(long, value_name = "N")]
    length: Option<usize>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// CSV file of samples (columns x1..xd, y) instead of a generator.
    #[arg(long, value_name = "PATH")]
    data: Option<PathBuf>,
    #[arg(long, value_parser = ["sinc1d", "narma2"])]
    generator: Option<String>,
    /// Target noise standard deviation for generators.
    #[arg(long, value_name = "R")]
    noise: Option<f64>,
    #[arg(long, value_name = "N")]
    max_atoms: Option<usize>,
    /// Random coefficient vectors per isometry check.
    #[arg(long, value_name = "N")]
    trials: Option<usize>,
}

impl Overrides {
    fn builder(&self) -> Result<ConfigBuilder, Error> {
        let mut b = match &self.config {
            Some(path) => ConfigBuilder::from_path(path)?,
            None => ConfigBuilder::new(),
        };
        let pairs: [(&str, Option<String>); 17] = [
            ("criterion", self.criterion.clone()),
            ("threshold", self.threshold.map(|v| format!("{v:?}"))),
            ("kernel", self.kernel.clone()),
            ("sigma", self.sigma.map(|v| format!("{v:?}"))),
            ("degree", self.degree.map(|v| v.to_string())),
            ("offset", self.offset.map(|v| format!("{v:?}"))),
            ("algo", self.algo.clone()),
            ("eta", self.eta.map(|v| format!("{v:?}"))),
            ("eps", self.eps.map(|v| format!("{v:?}"))),
            ("seed", self.seed.map(|v| v.to_string())),
            ("length", self.length.map(|v| v.to_string())),
            ("out", self.out.as_ref().map(|p| p.display().to_string())),
            ("data", self.data.as_ref().map(|p| p.display().to_string())),
            ("generator", self.generator.clone()),
            ("noise", self.noise.map(|v| format!("{v:?}"))),
            ("max_atoms", self.max_atoms.map(|v| v.to_string())),
            ("trials", self.trials.map(|v| v.to_string())),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                b.set(key, v)?;
            }
        }
        Ok(b)
    }
}

fn exit_for(err: &Error) -> u8 {
    if err.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_USAGE
    }
}

fn execute(cmd: Command) -> Result<u8, Error> {
    let mut stdout = io::stdout().lock();
    match cmd {
        Command::Run(o) => {
            let cfg = o.builder()?.build()?;
            let record = run_online(&cfg)?;
            let _ = writeln!(
                stdout,
                "samples={} atoms={} trailing_mse={:?} violations={} out={}",
                record.rows.len(),
                record.dictionary.len(),
                record.trailing_mse(0.1),
                record.report.violations.len(),
                cfg.output_dir.display()
            );
            Ok(0)
        }
        Command::Verify { input, overrides } => {
            let mut b = overrides.builder()?;
            if overrides.out.is_none() && b.get("out").is_none() {
                let dir = if input.is_dir() { input.clone() } else { input.parent().map(PathBuf::from).unwrap_or_default() };
                b.set("out", dir.display())?;
            }
            let cfg = b.build()?;
            let outcome = verify_path(&input, &cfg)?;
            let _ = write!(stdout, "{}", outcome.report.to_csv());
            for v in &outcome.report.violations {
                let kind = v.kind.map_or("matrix".to_string(), |k| k.to_string());
                let tag = if harness::counts_toward_exit(v) { "violation" } else { "flagged" };
                eprintln!("{tag}: {kind} {} by {:e}", v.bound, v.margin);
            }
            Ok(if outcome.passed() { 0 } else { EXIT_VIOLATION })
        }
        Command::Synthesize { name, overrides } => {
            let mut b = overrides.builder()?;
            if let Some(n) = &name {
                b.set("generator", n)?;
            }
            let to_dir = b.get("out").is_some();
            let cfg = b.build()?;
            let (generator, noise) = match cfg.data {
                DataSource::Synthetic { generator, noise_std } => (generator, noise_std),
                DataSource::Csv(_) => {
                    return Err(Error::Config { field: "data".into(), message: "synthesize does not read data".into() })
                }
            };
            let samples = synthesize(generator, cfg.seed, cfg.length, noise)?;
            if to_dir {
                let dir = &cfg.output_dir;
                std::fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.clone(), source: e })?;
                harness::write_samples_to(&samples, &dir.join(format!("{}.csv", generator.name())))?;
            } else {
                harness::write_samples(&samples, &mut stdout)
                    .map_err(|e| Error::Io { path: "<stdout>".into(), source: io::Error::other(e) })?;
            }
            Ok(0)
        }
        Command::Measure { input } => {
            let dict = Dictionary::read_from_path(&dictionary_path(&input))?;
            let _ = write!(stdout, "{}", measures_csv(&dict)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
