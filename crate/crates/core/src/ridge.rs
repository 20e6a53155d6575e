//! Batch kernel ridge regression on the full sample Gram matrix.
//!
//! Both variants minimize a squared loss over the coefficients `α` of
//! `ψ = Σ_i α_i κ(x_i, ·)`:
//!
//! * [`RidgeVariant::RkhsNorm`]: `½‖Kα − y‖² + ½ε αᵀKα`, solved from
//!   `(K² + εK) α = K y`;
//! * [`RidgeVariant::ParamNorm`]: `½‖Kα − y‖² + ½ε ‖α‖²`, solved from
//!   `(K² + εI) α = K y`.
//!
//! The normal equations are factored as they stand. The shortcut
//! `α = (K + εI)⁻¹ y` agrees with the first variant only for nonsingular `K`
//! and is not used.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::kernel::{all_finite, Kernel};
use crate::linalg::Cholesky;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RidgeVariant {
    RkhsNorm,
    ParamNorm,
}

impl RidgeVariant {
    pub fn name(&self) -> &'static str {
        match self {
            RidgeVariant::RkhsNorm => "rkhs_norm",
            RidgeVariant::ParamNorm => "param_norm",
        }
    }
}

impl fmt::Display for RidgeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RidgeVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rkhs_norm" | "rkhs" => Ok(RidgeVariant::RkhsNorm),
            "param_norm" | "param" => Ok(RidgeVariant::ParamNorm),
            other => Err(Error::InvalidParameter(format!(
                "unknown ridge variant `{other}` (valid: rkhs_norm, param_norm)"
            ))),
        }
    }
}

/// Samples, targets, kernel and regularization of one ridge fit.
#[derive(Debug, Clone)]
pub struct RidgeProblem {
    samples: Vec<Vec<f64>>,
    targets: DVector<f64>,
    kernel: Kernel,
    eps: f64,
    variant: RidgeVariant,
    gram: DMatrix<f64>,
}

impl RidgeProblem {
    pub fn new(
        samples: Vec<Vec<f64>>,
        targets: Vec<f64>,
        kernel: Kernel,
        eps: f64,
        variant: RidgeVariant,
    ) -> Result<Self> {
        kernel.validate()?;
        let n = samples.len();
        if n == 0 {
            return Err(Error::InvalidParameter("ridge regression needs at least one sample".into()));
        }
        if targets.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: targets.len() });
        }
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::InvalidParameter(format!("eps must be finite and > 0, got {eps}")));
        }
        let d = samples[0].len();
        for s in &samples {
            if s.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: s.len() });
            }
            if !all_finite(s) {
                return Err(Error::NonFinite);
            }
        }
        if !all_finite(&targets) {
            return Err(Error::NonFinite);
        }
        let mut gram = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v = kernel.eval_unchecked(&samples[i], &samples[j]);
                gram[(i, j)] = v;
                gram[(j, i)] = v;
            }
        }
        Ok(RidgeProblem { samples, targets: DVector::from_vec(targets), kernel, eps, variant, gram })
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    pub fn targets(&self) -> &DVector<f64> {
        &self.targets
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn variant(&self) -> RidgeVariant {
        self.variant
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    /// Normal-equation matrix and right-hand side `(M, K y)`.
    pub fn normal_equations(&self) -> (DMatrix<f64>, DVector<f64>) {
        let k = &self.gram;
        let mut m = k * k;
        match self.variant {
            RidgeVariant::RkhsNorm => m += k * self.eps,
            RidgeVariant::ParamNorm => {
                for i in 0..m.nrows() {
                    m[(i, i)] += self.eps;
                }
            }
        }
        // K² is symmetric in exact arithmetic; keep it so in floating point
        let m = (&m + m.transpose()) * 0.5;
        (m, k * &self.targets)
    }

    /// Solves the normal equations by Cholesky factorization.
    ///
    /// Fails with [`Error::Singular`] when the matrix is not numerically
    /// positive definite; for [`RidgeVariant::RkhsNorm`] this happens whenever
    /// `K` itself is singular.
    pub fn solve(&self) -> Result<DVector<f64>> {
        let (m, b) = self.normal_equations();
        let chol = Cholesky::factor(&m).map_err(|e| match (self.variant, e) {
            (RidgeVariant::RkhsNorm, Error::Singular(msg)) => Error::Singular(format!(
                "K² + εK is not positive definite ({msg}); the Gram matrix is singular, use param_norm"
            )),
            (_, e) => e,
        })?;
        Ok(chol.solve(&b))
    }

    fn check_alpha(&self, alpha: &DVector<f64>) -> Result<()> {
        if alpha.len() != self.gram.nrows() {
            return Err(Error::DimensionMismatch { expected: self.gram.nrows(), found: alpha.len() });
        }
        Ok(())
    }

    /// `½‖Kα − y‖²` plus `½ε αᵀKα` or `½ε ‖α‖²`.
    pub fn objective(&self, alpha: &DVector<f64>) -> Result<f64> {
        self.check_alpha(alpha)?;
        let r = &self.gram * alpha - &self.targets;
        let penalty = match self.variant {
            RidgeVariant::RkhsNorm => alpha.dot(&(&self.gram * alpha)),
            RidgeVariant::ParamNorm => alpha.norm_squared(),
        };
        Ok(0.5 * r.norm_squared() + 0.5 * self.eps * penalty)
    }

    /// `K(Kα − y) + εKα` or `K(Kα − y) + εα`.
    pub fn gradient(&self, alpha: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_alpha(alpha)?;
        let k = &self.gram;
        let fit = k * (k * alpha - &self.targets);
        Ok(match self.variant {
            RidgeVariant::RkhsNorm => fit + k * alpha * self.eps,
            RidgeVariant::ParamNorm => fit + alpha * self.eps,
        })
    }

    /// `‖Mα − b‖ / (‖M‖_F ‖α‖ + ‖b‖)` for the normal equations `Mα = b`.
    pub fn normal_equation_residual(&self, alpha: &DVector<f64>) -> Result<f64> {
        self.check_alpha(alpha)?;
        let (m, b) = self.normal_equations();
        let denom = m.norm() * alpha.norm() + b.norm();
        let r = (&m * alpha - &b).norm();
        Ok(if denom > 0.0 { r / denom } else { r })
    }

    /// `Σ_i α_i κ(x_i, x)`.
    pub fn predict(&self, alpha: &DVector<f64>, x: &[f64]) -> Result<f64> {
        self.check_alpha(alpha)?;
        Ok(alpha.dot(&self.kernel.kernel_vector(&self.samples, x)?))
    }
}
