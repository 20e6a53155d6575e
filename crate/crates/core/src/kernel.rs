//! Positive-definite kernels and the range of their self-norms.
//!
//! Three families are supported: linear `⟨x, y⟩`, polynomial
//! `(⟨x, y⟩ + c)^p` and Gaussian `exp(−‖x − y‖² / 2σ²)`. Every evaluation is
//! done in `f64`; the spectral checks downstream need about `1e-9` of slack
//! and single precision does not leave enough room.

use std::fmt;

use nalgebra::DVector;

use crate::error::{Error, Result};

/// Kernel family together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    Linear,
    Polynomial { degree: u32, offset: f64 },
    Gaussian { sigma: f64 },
}

impl Kernel {
    pub fn linear() -> Self {
        Kernel::Linear
    }

    pub fn polynomial(degree: u32, offset: f64) -> Result<Self> {
        let k = Kernel::Polynomial { degree, offset };
        k.validate()?;
        Ok(k)
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        let k = Kernel::Gaussian { sigma };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Kernel::Linear => Ok(()),
            Kernel::Polynomial { degree, offset } => {
                if degree == 0 {
                    return Err(Error::InvalidParameter("polynomial degree must be ≥ 1".into()));
                }
                if !(offset >= 0.0) || !offset.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "polynomial offset must be finite and ≥ 0, got {offset}"
                    )));
                }
                Ok(())
            }
            Kernel::Gaussian { sigma } => {
                if !(sigma > 0.0) || !sigma.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "gaussian bandwidth must be finite and > 0, got {sigma}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Whether `κ(x, x) = 1` for every `x`.
    pub fn is_unit_norm(&self) -> bool {
        matches!(self, Kernel::Gaussian { .. })
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Kernel::Linear => "linear",
            Kernel::Polynomial { .. } => "polynomial",
            Kernel::Gaussian { .. } => "gaussian",
        }
    }

    /// `κ(x, y)`.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
        }
        if !all_finite(x) || !all_finite(y) {
            return Err(Error::NonFinite);
        }
        Ok(self.eval_unchecked(x, y))
    }

    /// `κ(x, y)` without dimension or finiteness checks.
    pub(crate) fn eval_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        match *self {
            Kernel::Linear => dot(x, y),
            Kernel::Polynomial { degree, offset } => (dot(x, y) + offset).powi(degree as i32),
            Kernel::Gaussian { sigma } => {
                let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
                (-d2 / (2.0 * sigma * sigma)).exp()
            }
        }
    }

    /// Column vector whose `j`-th entry is `κ(atoms[j], x)`.
    pub fn kernel_vector(&self, atoms: &[Vec<f64>], x: &[f64]) -> Result<DVector<f64>> {
        if atoms.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        if !all_finite(x) {
            return Err(Error::NonFinite);
        }
        let mut out = DVector::<f64>::zeros(atoms.len());
        for (j, a) in atoms.iter().enumerate() {
            if a.len() != x.len() {
                return Err(Error::DimensionMismatch { expected: a.len(), found: x.len() });
            }
            out[j] = self.eval_unchecked(a, x);
        }
        Ok(out)
    }

    /// Range of `κ(x, x)`.
    ///
    /// Gaussian kernels have the analytic range `[1, 1]`. For the other
    /// families the range is estimated as the min and max of `κ(x, x)` over
    /// `samples`; this is only an estimate of the true infimum and supremum.
    pub fn norm_range(&self, samples: Option<&[Vec<f64>]>) -> Result<NormRange> {
        if self.is_unit_norm() {
            return Ok(NormRange { r_sq: 1.0, big_r_sq: 1.0, source: NormSource::Analytic });
        }
        let samples = match samples {
            Some(s) if !s.is_empty() => s,
            _ => {
                return Err(Error::NormRangeUnavailable(format!(
                    "{} kernel needs samples or a user-supplied range",
                    self.family_name()
                )))
            }
        };
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for x in samples {
            let v = self.eval(x, x)?;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Ok(NormRange { r_sq: lo, big_r_sq: hi, source: NormSource::Empirical })
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kernel::Linear => write!(f, "linear"),
            Kernel::Polynomial { degree, offset } => {
                write!(f, "polynomial degree={degree} offset={offset:?}")
            }
            Kernel::Gaussian { sigma } => write!(f, "gaussian sigma={sigma:?}"),
        }
    }
}

/// Where a [`NormRange`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormSource {
    Analytic,
    Empirical,
    UserSupplied,
}

/// Bounds `r² ≤ κ(x, x) ≤ R²` on the kernel self-norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRange {
    pub r_sq: f64,
    pub big_r_sq: f64,
    pub source: NormSource,
}

impl NormRange {
    pub fn user_supplied(r_sq: f64, big_r_sq: f64) -> Result<Self> {
        let nr = NormRange { r_sq, big_r_sq, source: NormSource::UserSupplied };
        nr.validate()?;
        Ok(nr)
    }

    /// `r = R = 1`.
    pub fn unit() -> Self {
        NormRange { r_sq: 1.0, big_r_sq: 1.0, source: NormSource::Analytic }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_sq >= 0.0 && self.r_sq <= self.big_r_sq && self.big_r_sq.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "norm range needs 0 ≤ r² ≤ R² < ∞, got r²={} R²={}",
                self.r_sq, self.big_r_sq
            )));
        }
        Ok(())
    }

    pub fn is_unit(&self) -> bool {
        self.r_sq == 1.0 && self.big_r_sq == 1.0
    }

    pub fn r(&self) -> f64 {
        self.r_sq.sqrt()
    }

    pub fn big_r(&self) -> f64 {
        self.big_r_sq.sqrt()
    }
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub(crate) fn all_finite(x: &[f64]) -> bool {
    x.iter().all(|v| v.is_finite())
}
