//! Experiment plumbing behind the `kdict` command-line tool: configuration,
//! data synthesis and ingestion, online runs and bound verification.

pub mod config;
pub mod data;
mod run;
pub mod synth;

pub use config::{ConfigBuilder, DataSource, ExperimentConfig, DEFAULT_LENGTH, DEFAULT_SEED};
pub use data::{parse_samples, read_samples, write_samples};
pub use run::{
    counts_toward_exit, dictionary_path, load_samples, measures_csv, report_norm_range, run_online, run_samples,
    verify_dictionary, verify_path, write_samples_to, RunRecord, RunRow, VerifyOutcome, DICTIONARY_TXT, PROBES_CSV,
    RUN_CSV, RUN_CSV_HEADER, SPECTRAL_CSV,
};
pub use synth::{synthesize, Generator, Sample, DEFAULT_NOISE_STD};
