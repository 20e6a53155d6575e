use std::path::PathBuf;

/// Errors raised by kernel, dictionary, spectral and learner operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in input")]
    NonFinite,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dictionary is empty")]
    EmptyDictionary,

    #[error("operation needs at least {required} atoms, dictionary has {found}")]
    TooFewAtoms { required: usize, found: usize },

    #[error("zero self-norm: kappa(x, x) = {0}")]
    ZeroNorm(f64),

    #[error("near-singular admission: Schur pivot {pivot:e} below {tolerance:e}")]
    NearSingularAdmission { pivot: f64, tolerance: f64 },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("matrix is not symmetric: |a[{i},{j}] - a[{j},{i}]| = {gap:e}")]
    Asymmetric { i: usize, j: usize, gap: f64 },

    #[error("norm range unavailable: {0}")]
    NormRangeUnavailable(String),

    #[error("vacuous bounds: {0}")]
    VacuousBounds(String),

    #[error("diverging configuration: {0}")]
    Diverging(String),

    #[error("unknown generator `{name}` (valid: {valid})")]
    UnknownGenerator { name: String, valid: String },

    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input or I/O).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NearSingularAdmission { .. }
                | Error::Singular(_)
                | Error::ZeroNorm(_)
                | Error::VacuousBounds(_)
                | Error::Diverging(_)
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        Error::Config { field: field.to_string(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
