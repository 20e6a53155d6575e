//! Online regression over a growing dictionary.
//!
//! The model is `ψ_t(x) = α_tᵀ κ̄(x)` with `κ̄(x) = (κ(x, x̄_1), …, κ(x, x̄_m))`.
//! Each [`step`] predicts with the current state, offers the sample to the
//! dictionary, pads `α` with a zero when the sample is admitted, and then
//! applies one of four updates with prediction error `e_t`:
//!
//! | algorithm      | update                                                |
//! |----------------|-------------------------------------------------------|
//! | `lms`          | `α + η (e_t κ̄(x_t) − ε α)`                            |
//! | `lms-gram`     | `α + η (e_t κ̄(x_t) − ε K̄ α)`                          |
//! | `nlms`         | `α + η / (‖κ̄(x_t)‖² + ε) · e_t κ̄(x_t)`                |
//! | `functional`   | `(1 − η ε) α + η e_t ξ`, with `ξ = K̄⁻¹ κ̄(x_t)`        |
//!
//! The functional update is the dual form of
//! `ψ_t = (1 − ηε) ψ_{t−1} + η e_t P κ(x_t, ·)`, where `P` projects onto the
//! span of the atoms.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::dictionary::{Admission, Dictionary};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    LmsIdentity,
    LmsGram,
    Nlms,
    FunctionalSgd,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] =
        [Algorithm::LmsIdentity, Algorithm::LmsGram, Algorithm::Nlms, Algorithm::FunctionalSgd];

    /// Short name used on the command line and in config files.
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::LmsIdentity => "lms",
            Algorithm::LmsGram => "lms-gram",
            Algorithm::Nlms => "nlms",
            Algorithm::FunctionalSgd => "functional",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lms" | "lms_identity" => Ok(Algorithm::LmsIdentity),
            "lms-gram" | "lms_gram" => Ok(Algorithm::LmsGram),
            "nlms" => Ok(Algorithm::Nlms),
            "functional" | "functional_sgd" => Ok(Algorithm::FunctionalSgd),
            other => Err(Error::InvalidParameter(format!(
                "unknown algorithm `{other}` (valid: lms, lms-gram, nlms, functional)"
            ))),
        }
    }
}

/// Update rule with constant step size `eta` and regularizer `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearnerConfig {
    pub algorithm: Algorithm,
    pub eta: f64,
    pub eps: f64,
}

impl LearnerConfig {
    pub fn new(algorithm: Algorithm, eta: f64, eps: f64) -> Result<Self> {
        let c = LearnerConfig { algorithm, eta, eps };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0) || !self.eta.is_finite() {
            return Err(Error::InvalidParameter(format!("eta must be finite and > 0, got {}", self.eta)));
        }
        if !(self.eps >= 0.0) || !self.eps.is_finite() {
            return Err(Error::InvalidParameter(format!("eps must be finite and ≥ 0, got {}", self.eps)));
        }
        if self.algorithm == Algorithm::FunctionalSgd {
            decay(self.eta, self.eps)?;
        }
        Ok(())
    }
}

/// Dual coefficients sized for a dictionary of `dict_version` atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelState {
    pub alpha: DVector<f64>,
    pub dict_version: usize,
}

impl Default for ModelState {
    fn default() -> Self {
        ModelState { alpha: DVector::zeros(0), dict_version: 0 }
    }
}

impl ModelState {
    pub fn zeros(m: usize) -> Self {
        ModelState { alpha: DVector::zeros(m), dict_version: m }
    }

    fn check(&self, dict: &Dictionary) -> Result<()> {
        if self.alpha.len() != dict.len() || self.dict_version != dict.len() {
            return Err(Error::DimensionMismatch { expected: dict.len(), found: self.alpha.len() });
        }
        Ok(())
    }

    /// `ψ(x) = αᵀ κ̄(x)`; zero for an empty dictionary.
    pub fn predict(&self, dict: &Dictionary, x: &[f64]) -> Result<f64> {
        self.check(dict)?;
        if dict.is_empty() {
            return Ok(0.0);
        }
        Ok(self.alpha.dot(&dict.kernel_vector(x)?))
    }

    /// `‖α‖²`.
    pub fn alpha_sq_norm(&self) -> f64 {
        self.alpha.norm_squared()
    }

    /// `‖ψ‖²_H = αᵀ K̄ α`.
    pub fn psi_sq_norm(&self, dict: &Dictionary) -> Result<f64> {
        self.check(dict)?;
        Ok(self.alpha.dot(&(dict.gram() * &self.alpha)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    /// `ψ_{t−1}(x_t)`, made before the dictionary or `α` change.
    pub prediction: f64,
    /// `e_t = y_t − ψ_{t−1}(x_t)`.
    pub error: f64,
    pub admitted: bool,
    pub new_m: usize,
}

fn check_len(alpha: &DVector<f64>, kvec: &DVector<f64>) -> Result<()> {
    if alpha.len() != kvec.len() {
        return Err(Error::DimensionMismatch { expected: alpha.len(), found: kvec.len() });
    }
    Ok(())
}

fn decay(eta: f64, eps: f64) -> Result<f64> {
    let f = 1.0 - eta * eps;
    if !(f > 0.0) {
        return Err(Error::Diverging(format!("1 − η·ε = {f} ≤ 0 (η = {eta}, ε = {eps})")));
    }
    Ok(f)
}

/// `α + η (e κ̄ − ε α)`; plain LMS when `ε = 0`.
pub fn update_lms_identity(
    alpha: &DVector<f64>,
    kvec: &DVector<f64>,
    e: f64,
    eta: f64,
    eps: f64,
) -> Result<DVector<f64>> {
    check_len(alpha, kvec)?;
    Ok(alpha + (kvec * e - alpha * eps) * eta)
}

/// `α + η (e κ̄ − ε K̄ α)`.
pub fn update_lms_gram(
    alpha: &DVector<f64>,
    kvec: &DVector<f64>,
    gram: &DMatrix<f64>,
    e: f64,
    eta: f64,
    eps: f64,
) -> Result<DVector<f64>> {
    check_len(alpha, kvec)?;
    if gram.nrows() != alpha.len() || gram.ncols() != alpha.len() {
        return Err(Error::DimensionMismatch { expected: alpha.len(), found: gram.nrows() });
    }
    Ok(alpha + (kvec * e - gram * alpha * eps) * eta)
}

/// `α + η / (‖κ̄‖² + ε) · e κ̄`.
pub fn update_nlms(alpha: &DVector<f64>, kvec: &DVector<f64>, e: f64, eta: f64, eps: f64) -> Result<DVector<f64>> {
    check_len(alpha, kvec)?;
    let denom = kvec.norm_squared() + eps;
    if !(denom > 0.0) {
        return Err(Error::Diverging("NLMS normalizer ‖κ̄(x)‖² + ε is zero".into()));
    }
    Ok(alpha + kvec * (eta * e / denom))
}

/// `(1 − ηε) α + η e ξ` with `ξ = K̄⁻¹ κ̄(x)`, the projection coefficients of
/// `κ(x, ·)` onto the dictionary span.
pub fn update_functional(
    alpha: &DVector<f64>,
    dict: &Dictionary,
    x: &[f64],
    e: f64,
    eta: f64,
    eps: f64,
) -> Result<DVector<f64>> {
    let f = decay(eta, eps)?;
    if alpha.len() != dict.len() {
        return Err(Error::DimensionMismatch { expected: dict.len(), found: alpha.len() });
    }
    let xi = dict.project(x)?.coefficients;
    Ok(alpha * f + xi * (eta * e))
}

/// One online step: predict, admit, update.
///
/// On error neither `state` nor `dict` is modified.
pub fn step(
    state: &mut ModelState,
    dict: &mut Dictionary,
    x: &[f64],
    y: f64,
    cfg: &LearnerConfig,
) -> Result<StepOutcome> {
    if !y.is_finite() {
        return Err(Error::NonFinite);
    }
    let prediction = state.predict(dict, x)?;
    let error = y - prediction;

    let snapshot = dict.clone();
    let admitted = dict.admit(x)? == Admission::Accepted;
    let mut alpha = state.alpha.clone();
    if admitted {
        alpha = alpha.push(0.0);
    }
    let updated = match cfg.algorithm {
        Algorithm::LmsIdentity => dict
            .kernel_vector(x)
            .and_then(|k| update_lms_identity(&alpha, &k, error, cfg.eta, cfg.eps)),
        Algorithm::LmsGram => dict
            .kernel_vector(x)
            .and_then(|k| update_lms_gram(&alpha, &k, dict.gram(), error, cfg.eta, cfg.eps)),
        Algorithm::Nlms => dict.kernel_vector(x).and_then(|k| update_nlms(&alpha, &k, error, cfg.eta, cfg.eps)),
        Algorithm::FunctionalSgd => update_functional(&alpha, dict, x, error, cfg.eta, cfg.eps),
    };
    let alpha = match updated {
        Ok(a) => a,
        Err(e) => {
            *dict = snapshot;
            return Err(e);
        }
    };
    if alpha.iter().any(|v| !v.is_finite()) {
        *dict = snapshot;
        return Err(Error::Diverging("coefficients became non-finite".into()));
    }
    state.alpha = alpha;
    state.dict_version = dict.len();
    Ok(StepOutcome { prediction, error, admitted, new_m: dict.len() })
}

/// A dictionary, its coefficients and an update rule, stepped together.
#[derive(Debug, Clone)]
pub struct OnlineLearner {
    dict: Dictionary,
    state: ModelState,
    config: LearnerConfig,
}

impl OnlineLearner {
    /// Starts from `dict` with all coefficients zero.
    pub fn new(dict: Dictionary, config: LearnerConfig) -> Result<Self> {
        config.validate()?;
        let state = ModelState::zeros(dict.len());
        Ok(OnlineLearner { dict, state, config })
    }

    pub fn step(&mut self, x: &[f64], y: f64) -> Result<StepOutcome> {
        step(&mut self.state, &mut self.dict, x, y, &self.config)
    }

    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        self.state.predict(&self.dict, x)
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dict
    }

    pub fn state(&self) -> &ModelState {
        &self.state
    }

    pub fn config(&self) -> &LearnerConfig {
        &self.config
    }

    pub fn into_parts(self) -> (Dictionary, ModelState) {
        (self.dict, self.state)
    }
}
