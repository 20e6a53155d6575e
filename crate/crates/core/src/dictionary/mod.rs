//! Online sparse dictionaries.
//!
//! A [`Dictionary`] keeps an ordered set of atoms `x̄_1 … x̄_m`, their Gram
//! matrix `K̄` and its inverse. Candidates are admitted or discarded by one of
//! four sparsification criteria:
//!
//! | criterion     | admit `x_t` when                                              |
//! |---------------|---------------------------------------------------------------|
//! | distance      | `min_j κ(x_t,x_t) − κ(x_t,x̄_j)² / κ(x̄_j,x̄_j) ≥ δ²`            |
//! | approximation | `κ(x_t,x_t) − κ̄(x_t)ᵀ K̄⁻¹ κ̄(x_t) ≥ δ²`                         |
//! | coherence     | `max_j |κ(x_t,x̄_j)| / √(κ(x_t,x_t) κ(x̄_j,x̄_j)) ≤ γ`          |
//! | Babel         | `Σ_j |κ(x_t,x̄_j)| ≤ γ`                                        |
//!
//! Equality admits in every case. The inverse is grown by a block
//! (Schur-complement) update on each admission and refactored from scratch
//! every [`REFACTOR_INTERVAL`] admissions or whenever the new column drifts.

mod format;

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::kernel::{all_finite, Kernel};
use crate::linalg::{identity_residual, symmetrize, Cholesky};

/// Smallest Schur pivot accepted when growing the Gram inverse.
pub const MIN_SCHUR_PIVOT: f64 = 1e-12;

/// Admissions between two full refactorizations of the Gram inverse.
pub const REFACTOR_INTERVAL: usize = 64;

/// Column residual that forces an early refactorization.
pub const DRIFT_TOLERANCE: f64 = 1e-8;

/// The four sparsity measures, which double as sparsification criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureKind {
    Distance,
    Approximation,
    Coherence,
    Babel,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 4] = [
        MeasureKind::Distance,
        MeasureKind::Approximation,
        MeasureKind::Coherence,
        MeasureKind::Babel,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MeasureKind::Distance => "distance",
            MeasureKind::Approximation => "approximation",
            MeasureKind::Coherence => "coherence",
            MeasureKind::Babel => "babel",
        }
    }

    /// Distance and approximation are lower-bounded by `δ`; coherence and
    /// Babel are upper-bounded by `γ`.
    pub fn is_lower_bounded(&self) -> bool {
        matches!(self, MeasureKind::Distance | MeasureKind::Approximation)
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distance" => Ok(MeasureKind::Distance),
            "approximation" => Ok(MeasureKind::Approximation),
            "coherence" => Ok(MeasureKind::Coherence),
            "babel" => Ok(MeasureKind::Babel),
            other => Err(Error::InvalidParameter(format!(
                "unknown criterion `{other}` (valid: distance, approximation, coherence, babel)"
            ))),
        }
    }
}

/// Sparsification criterion and its threshold (`δ` or `γ`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Criterion {
    pub kind: MeasureKind,
    pub threshold: f64,
    /// Hard cap on the number of atoms; admission stops once reached.
    pub max_atoms: Option<usize>,
}

impl Criterion {
    pub fn new(kind: MeasureKind, threshold: f64) -> Result<Self> {
        let c = Criterion { kind, threshold, max_atoms: None };
        c.validate()?;
        Ok(c)
    }

    pub fn with_max_atoms(mut self, max_atoms: usize) -> Result<Self> {
        self.max_atoms = Some(max_atoms);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.threshold;
        let ok = match self.kind {
            MeasureKind::Distance | MeasureKind::Approximation | MeasureKind::Babel => {
                t > 0.0 && t.is_finite()
            }
            MeasureKind::Coherence => t > 0.0 && t <= 1.0,
        };
        if !ok {
            let range = if self.kind == MeasureKind::Coherence { "(0, 1]" } else { "(0, ∞)" };
            return Err(Error::InvalidParameter(format!(
                "{} threshold must lie in {range}, got {t}",
                self.kind
            )));
        }
        if self.max_atoms == Some(0) {
            return Err(Error::InvalidParameter("max_atoms must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of [`Dictionary::admit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admission {
    Accepted,
    Rejected,
}

impl Admission {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Admission::Accepted)
    }
}

/// Projection of `κ(x, ·)` onto the span of the dictionary.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    /// `ξ = K̄⁻¹ κ̄(x)`.
    pub coefficients: DVector<f64>,
    /// `κ(x,x) − κ̄(x)ᵀ ξ`, clamped at zero.
    pub residual_sq: f64,
}

/// Ordered atom set with its Gram matrix and inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary {
    kernel: Kernel,
    criterion: Criterion,
    atoms: Vec<Vec<f64>>,
    gram: DMatrix<f64>,
    // None only for loaded dictionaries whose Gram matrix is singular.
    gram_inv: Option<DMatrix<f64>>,
    since_refactor: usize,
}

// Compared as √stat ≥ δ so that δ given as √v admits a statistic of exactly v.
fn passes(kind: MeasureKind, threshold: f64, stat: f64) -> bool {
    if kind.is_lower_bounded() {
        stat.max(0.0).sqrt() >= threshold
    } else {
        stat <= threshold
    }
}

impl Dictionary {
    pub fn new(kernel: Kernel, criterion: Criterion) -> Self {
        Dictionary {
            kernel,
            criterion,
            atoms: Vec::new(),
            gram: DMatrix::zeros(0, 0),
            gram_inv: Some(DMatrix::zeros(0, 0)),
            since_refactor: 0,
        }
    }

    /// Builds a dictionary from explicit atoms without running the criterion.
    ///
    /// The Gram matrix may be singular (e.g. collinear atoms under a linear
    /// kernel); the inverse is then absent and [`project`](Self::project),
    /// approximation tests and further admissions fail with
    /// [`Error::Singular`]. Exact duplicate atoms are refused.
    pub fn from_atoms(kernel: Kernel, criterion: Criterion, atoms: Vec<Vec<f64>>) -> Result<Self> {
        kernel.validate()?;
        criterion.validate()?;
        if let Some(first) = atoms.first() {
            let d = first.len();
            for a in &atoms {
                if a.len() != d {
                    return Err(Error::DimensionMismatch { expected: d, found: a.len() });
                }
                if !all_finite(a) {
                    return Err(Error::NonFinite);
                }
            }
        }
        for i in 0..atoms.len() {
            for j in 0..i {
                if atoms[i] == atoms[j] {
                    return Err(Error::InvalidParameter(format!(
                        "atoms {j} and {i} are identical"
                    )));
                }
            }
        }
        let m = atoms.len();
        let mut gram = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            for j in 0..=i {
                let v = kernel.eval_unchecked(&atoms[i], &atoms[j]);
                gram[(i, j)] = v;
                gram[(j, i)] = v;
            }
        }
        let gram_inv = Cholesky::factor(&gram).ok().map(|c| c.inverse());
        Ok(Dictionary { kernel, criterion, atoms, gram, gram_inv, since_refactor: 0 })
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn criterion(&self) -> &Criterion {
        &self.criterion
    }

    pub fn atoms(&self) -> &[Vec<f64>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Input dimension, once the first atom is in.
    pub fn dim(&self) -> Option<usize> {
        self.atoms.first().map(Vec::len)
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn gram_inverse(&self) -> Option<&DMatrix<f64>> {
        self.gram_inv.as_ref()
    }

    /// `‖K̄ K̄⁻¹ − I‖_F`, or `+∞` when no inverse is held.
    pub fn inverse_residual(&self) -> f64 {
        match &self.gram_inv {
            Some(inv) => identity_residual(&self.gram, inv),
            None => f64::INFINITY,
        }
    }

    pub fn kernel_vector(&self, x: &[f64]) -> Result<DVector<f64>> {
        self.kernel.kernel_vector(&self.atoms, x)
    }

    fn check_candidate(&self, x: &[f64]) -> Result<()> {
        if !all_finite(x) {
            return Err(Error::NonFinite);
        }
        if let Some(d) = self.dim() {
            if x.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: x.len() });
            }
        }
        Ok(())
    }

    fn inverse_or_err(&self) -> Result<&DMatrix<f64>> {
        self.gram_inv
            .as_ref()
            .ok_or_else(|| Error::Singular("dictionary Gram matrix has no inverse".into()))
    }

    /// Runs the configured criterion on `x` and appends it on success.
    ///
    /// A rejected candidate leaves the dictionary untouched, as does an
    /// error. Exact duplicates of an existing atom and candidates arriving
    /// after `max_atoms` is reached are rejected without evaluating the
    /// criterion.
    pub fn admit(&mut self, x: &[f64]) -> Result<Admission> {
        self.check_candidate(x)?;
        let kxx = self.kernel.eval_unchecked(x, x);
        if self.atoms.is_empty() {
            if !(kxx >= MIN_SCHUR_PIVOT) {
                return Err(Error::NearSingularAdmission { pivot: kxx, tolerance: MIN_SCHUR_PIVOT });
            }
            self.atoms.push(x.to_vec());
            self.gram = DMatrix::from_element(1, 1, kxx);
            self.gram_inv = Some(DMatrix::from_element(1, 1, 1.0 / kxx));
            self.since_refactor = 1;
            return Ok(Admission::Accepted);
        }
        if let Some(cap) = self.criterion.max_atoms {
            if self.atoms.len() >= cap {
                return Ok(Admission::Rejected);
            }
        }
        if self.atoms.iter().any(|a| a.as_slice() == x) {
            return Ok(Admission::Rejected);
        }
        let kvec = self.kernel.kernel_vector(&self.atoms, x)?;
        let stat = self.statistic_with(self.criterion.kind, kxx, &kvec)?;
        if !passes(self.criterion.kind, self.criterion.threshold, stat) {
            return Ok(Admission::Rejected);
        }
        self.grow(x, kxx, kvec)?;
        Ok(Admission::Accepted)
    }


    fn grow(&mut self, x: &[f64], kxx: f64, kvec: DVector<f64>) -> Result<()> {
        let inv = self.inverse_or_err()?;
        // one step of iterative refinement keeps g accurate as K̄⁻¹ drifts
        let mut g = inv * &kvec;
        let r = &kvec - &self.gram * &g;
        g += inv * r;
        let pivot = kxx - kvec.dot(&g);
        if !(pivot >= MIN_SCHUR_PIVOT) {
            return Err(Error::NearSingularAdmission { pivot, tolerance: MIN_SCHUR_PIVOT });
        }
        let m = self.atoms.len();
        let mut gram = self.gram.clone().resize(m + 1, m + 1, 0.0);
        for j in 0..m {
            gram[(m, j)] = kvec[j];
            gram[(j, m)] = kvec[j];
        }
        gram[(m, m)] = kxx;

        // [K b; bᵀ c]⁻¹ = [K⁻¹ + g gᵀ/s, −g/s; −gᵀ/s, 1/s]
        let mut next = inv.clone().resize(m + 1, m + 1, 0.0);
        for i in 0..m {
            for j in 0..m {
                next[(i, j)] += g[i] * g[j] / pivot;
            }
            next[(i, m)] = -g[i] / pivot;
            next[(m, i)] = -g[i] / pivot;
        }
        next[(m, m)] = 1.0 / pivot;

        let mut since = self.since_refactor + 1;
        let drift = {
            let col = next.column(m);
            let mut r = &gram * col;
            r[m] -= 1.0;
            r.norm()
        };
        if since >= REFACTOR_INTERVAL || !(drift <= DRIFT_TOLERANCE) {
            next = Cholesky::factor(&gram)
                .map_err(|_| Error::NearSingularAdmission { pivot, tolerance: MIN_SCHUR_PIVOT })?
                .inverse();
            since = 0;
        }
        self.atoms.push(x.to_vec());
        self.gram = gram;
        self.gram_inv = Some(next);
        self.since_refactor = since;
        Ok(())
    }

    /// Value of `kind`'s admission statistic for candidate `x`.
    pub fn statistic(&self, kind: MeasureKind, x: &[f64]) -> Result<f64> {
        if self.atoms.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        self.check_candidate(x)?;
        let kxx = self.kernel.eval_unchecked(x, x);
        let kvec = self.kernel.kernel_vector(&self.atoms, x)?;
        self.statistic_with(kind, kxx, &kvec)
    }

    fn statistic_with(&self, kind: MeasureKind, kxx: f64, kvec: &DVector<f64>) -> Result<f64> {
        match kind {
            MeasureKind::Distance => {
                let mut best = f64::INFINITY;
                for (j, &kj) in kvec.iter().enumerate() {
                    let kjj = self.gram[(j, j)];
                    if !(kjj > 0.0) {
                        return Err(Error::ZeroNorm(kjj));
                    }
                    best = best.min(kxx - kj * kj / kjj);
                }
                Ok(best)
            }
            MeasureKind::Approximation => {
                let inv = self.inverse_or_err()?;
                Ok((kxx - kvec.dot(&(inv * kvec))).max(0.0))
            }
            MeasureKind::Coherence => {
                if !(kxx > 0.0) {
                    return Err(Error::ZeroNorm(kxx));
                }
                let mut worst: f64 = 0.0;
                for (j, &kj) in kvec.iter().enumerate() {
                    let kjj = self.gram[(j, j)];
                    if !(kjj > 0.0) {
                        return Err(Error::ZeroNorm(kjj));
                    }
                    worst = worst.max(kj.abs() / (kxx * kjj).sqrt());
                }
                Ok(worst)
            }
            MeasureKind::Babel => Ok(kvec.iter().map(|v| v.abs()).sum()),
        }
    }

    fn test(&self, kind: MeasureKind, x: &[f64]) -> Result<bool> {
        let stat = self.statistic(kind, x)?;
        Ok(passes(kind, self.criterion.threshold, stat))
    }

    /// Distance test against the configured threshold `δ`.
    pub fn test_distance(&self, x: &[f64]) -> Result<bool> {
        self.test(MeasureKind::Distance, x)
    }

    /// Approximation test: projection residual `≥ δ²`.
    pub fn test_approximation(&self, x: &[f64]) -> Result<bool> {
        self.test(MeasureKind::Approximation, x)
    }

    pub fn test_coherence(&self, x: &[f64]) -> Result<bool> {
        self.test(MeasureKind::Coherence, x)
    }

    /// Unnormalized cumulative correlation `Σ_j |κ(x, x̄_j)| ≤ γ`.
    pub fn test_babel(&self, x: &[f64]) -> Result<bool> {
        self.test(MeasureKind::Babel, x)
    }

    /// Projects `κ(x, ·)` onto the span of the atoms.
    pub fn project(&self, x: &[f64]) -> Result<Projection> {
        if self.atoms.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        self.check_candidate(x)?;
        let inv = self.inverse_or_err()?;
        let kvec = self.kernel.kernel_vector(&self.atoms, x)?;
        let kxx = self.kernel.eval_unchecked(x, x);
        let coefficients = inv * &kvec;
        let residual_sq = (kxx - kvec.dot(&coefficients)).max(0.0);
        Ok(Projection { coefficients, residual_sq })
    }

    /// Exact sparsity measure of the current atom set.
    ///
    /// Distance, approximation and coherence need at least two atoms; Babel
    /// is defined for one atom (value 0).
    pub fn measure(&self, kind: MeasureKind) -> Result<f64> {
        let m = self.atoms.len();
        let required = if kind == MeasureKind::Babel { 1 } else { 2 };
        if m < required {
            return Err(Error::TooFewAtoms { required, found: m });
        }
        let k = &self.gram;
        match kind {
            MeasureKind::Distance => {
                let mut best = f64::INFINITY;
                for i in 0..m {
                    for j in 0..m {
                        if i == j {
                            continue;
                        }
                        let kjj = k[(j, j)];
                        if !(kjj > 0.0) {
                            return Err(Error::ZeroNorm(kjj));
                        }
                        best = best.min(k[(i, i)] - k[(i, j)] * k[(i, j)] / kjj);
                    }
                }
                Ok(best.max(0.0).sqrt())
            }
            MeasureKind::Approximation => {
                let mut best = f64::INFINITY;
                for i in 0..m {
                    let rest: Vec<usize> = (0..m).filter(|&j| j != i).collect();
                    let sub = k.select_rows(&rest).select_columns(&rest);
                    let ki = DVector::from_iterator(rest.len(), rest.iter().map(|&j| k[(i, j)]));
                    let chol = Cholesky::factor(&sub).map_err(|_| {
                        Error::Singular(format!("Gram matrix without atom {i} is singular"))
                    })?;
                    best = best.min(k[(i, i)] - ki.dot(&chol.solve(&ki)));
                }
                Ok(best.max(0.0).sqrt())
            }
            MeasureKind::Coherence => {
                let mut worst: f64 = 0.0;
                for i in 0..m {
                    for j in (i + 1)..m {
                        let d = k[(i, i)] * k[(j, j)];
                        if !(d > 0.0) {
                            return Err(Error::ZeroNorm(k[(i, i)].min(k[(j, j)])));
                        }
                        worst = worst.max(k[(i, j)].abs() / d.sqrt());
                    }
                }
                Ok(worst)
            }
            MeasureKind::Babel => Ok((0..m)
                .map(|i| (0..m).filter(|&j| j != i).map(|j| k[(i, j)].abs()).sum::<f64>())
                .fold(0.0, f64::max)),
        }
    }

    /// Recomputes the inverse from scratch.
    pub fn refactor(&mut self) -> Result<()> {
        let mut inv = Cholesky::factor(&self.gram)?.inverse();
        symmetrize(&mut inv);
        self.gram_inv = Some(inv);
        self.since_refactor = 0;
        Ok(())
    }
}
