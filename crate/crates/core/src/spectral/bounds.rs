//! Closed-form spectral bounds for sparse dictionaries.
//!
//! Each function takes a sparsity measure `θ` (`δ` for distance and
//! approximation, `γ` for coherence and Babel), the atom count `m` and the
//! kernel norm range `r² ≤ κ(x, x) ≤ R²`. With `s_δ = (m−1) R √(R² − δ²)` and
//! `s_γ = (m−1) γ R²`:
//!
//! | kind          | lower       | upper       | linearly independent if |
//! |---------------|-------------|-------------|-------------------------|
//! | distance      | `r² − s_δ`  | `R² + s_δ`  | `s_δ < r²`              |
//! | approximation | `δ²`        | `2R² − δ²`  | `δ > 0`                 |
//! | coherence     | `r² − s_γ`  | `R² + s_γ`  | `s_γ < r²`              |
//! | Babel         | `r² − γ`    | `R² + γ`    | `γ < r²`                |
//!
//! Distance, coherence and Babel follow from the Geršgorin disc theorem and
//! hold for every dictionary with the given measure. The approximation row
//! does **not** hold in general: the pair `[[1, c], [c, 1]]` has approximation
//! measure `δ² = 1 − c²` but smallest eigenvalue `1 − |c|`. It is provided
//! as stated so that reports can flag it.
//!
//! Lower bounds can be zero or negative (vacuous); they are returned as they
//! are and never clamped.

use crate::dictionary::MeasureKind;
use crate::error::{Error, Result};
use crate::kernel::NormRange;

/// Interval `[lower, upper]` expected to contain every Gram eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenBounds {
    pub lower: f64,
    pub upper: f64,
}

impl EigenBounds {
    /// True when the lower bound says nothing (`≤ 0`).
    pub fn is_vacuous(&self) -> bool {
        self.lower <= 0.0
    }

    pub fn contains(&self, lambda: f64, slack: f64) -> bool {
        lambda >= self.lower - slack && lambda <= self.upper + slack
    }
}

/// Isometry constant `ν` and the atom rescaling it applies to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryConstant {
    pub nu: f64,
    /// Atoms divided by this factor have Rayleigh ratios in `[1 − ν, 1 + ν]`.
    pub rescale_factor: f64,
}

fn check(kind: MeasureKind, theta: f64, m: usize, range: &NormRange) -> Result<()> {
    range.validate()?;
    if m == 0 {
        return Err(Error::InvalidParameter("bounds need m ≥ 1".into()));
    }
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(Error::InvalidParameter(format!("{kind} measure must be finite and ≥ 0, got {theta}")));
    }
    Ok(())
}

// R² − δ², rejecting δ² > R² beyond round-off.
fn headroom(delta: f64, range: &NormRange) -> Result<f64> {
    let gap = range.big_r_sq - delta * delta;
    if gap < -1e-12 * range.big_r_sq.max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "δ² = {} exceeds R² = {}",
            delta * delta,
            range.big_r_sq
        )));
    }
    Ok(gap.max(0.0))
}

/// Half-width of the Geršgorin band around the diagonal for `kind`.
fn spread(kind: MeasureKind, theta: f64, m: usize, range: &NormRange) -> Result<f64> {
    let m1 = (m - 1) as f64;
    Ok(match kind {
        MeasureKind::Distance => m1 * range.big_r() * headroom(theta, range)?.sqrt(),
        MeasureKind::Coherence => m1 * theta * range.big_r_sq,
        MeasureKind::Babel => theta,
        MeasureKind::Approximation => unreachable!("approximation bounds are not symmetric"),
    })
}

pub fn eigen_bounds(kind: MeasureKind, theta: f64, m: usize, range: &NormRange) -> Result<EigenBounds> {
    check(kind, theta, m, range)?;
    match kind {
        MeasureKind::Approximation => {
            headroom(theta, range)?;
            let d2 = theta * theta;
            Ok(EigenBounds { lower: d2, upper: 2.0 * range.big_r_sq - d2 })
        }
        _ => {
            let s = spread(kind, theta, m, range)?;
            Ok(EigenBounds { lower: range.r_sq - s, upper: range.big_r_sq + s })
        }
    }
}

/// Sufficient condition for the atoms to be linearly independent.
pub fn lin_indep_condition(kind: MeasureKind, theta: f64, m: usize, range: &NormRange) -> bool {
    if check(kind, theta, m, range).is_err() {
        return false;
    }
    match kind {
        MeasureKind::Approximation => theta > 0.0,
        _ => match spread(kind, theta, m, range) {
            Ok(s) => s < range.r_sq,
            Err(_) => false,
        },
    }
}

/// Upper bound on `λ_max / λ_min`; `+∞` when the denominator is not positive.
pub fn condition_number_bound(kind: MeasureKind, theta: f64, m: usize, range: &NormRange) -> f64 {
    if check(kind, theta, m, range).is_err() {
        return f64::INFINITY;
    }
    match kind {
        MeasureKind::Approximation => {
            let d2 = theta * theta;
            if d2 > 0.0 {
                2.0 * range.big_r_sq / d2 - 1.0
            } else {
                f64::INFINITY
            }
        }
        _ => match spread(kind, theta, m, range) {
            Ok(s) if range.r_sq - s > 0.0 => (range.big_r_sq + s) / (range.r_sq - s),
            _ => f64::INFINITY,
        },
    }
}

/// Quasi-isometry constant between coefficient space and the atoms' span.
///
/// With unit-norm atoms (`r = R = 1`) this is `(m−1)√(1−δ²)`, `1 − δ²`,
/// `(m−1)γ` or `γ`, and no rescaling is needed. Otherwise
/// `ν = (u − l)/(u + l)` for the eigenvalue bounds `(l, u)`, valid for atoms
/// divided by `√((u + l)/2)`:
///
/// * distance: `(R² − r² + 2(m−1)R√(R² − δ²)) / (R² + r²)`
/// * approximation: `1 − δ²/R²`
/// * coherence: `(R² − r² + 2(m−1)γR²) / (R² + r²)`
/// * Babel: `(R² − r² + 2γ) / (R² + r²)`
pub fn isometry_constant(kind: MeasureKind, theta: f64, m: usize, range: &NormRange) -> Result<IsometryConstant> {
    let b = eigen_bounds(kind, theta, m, range)?;
    let m1 = (m - 1) as f64;
    if range.is_unit() {
        let nu = match kind {
            MeasureKind::Distance => m1 * (1.0 - theta * theta).max(0.0).sqrt(),
            MeasureKind::Approximation => 1.0 - theta * theta,
            MeasureKind::Coherence => m1 * theta,
            MeasureKind::Babel => theta,
        };
        return Ok(IsometryConstant { nu, rescale_factor: 1.0 });
    }
    let sum = b.upper + b.lower;
    if !(sum > 0.0) {
        return Err(Error::VacuousBounds(format!(
            "{kind}: u + l = {sum} leaves no isometry rescaling"
        )));
    }
    let (r2, rr2) = (range.r_sq, range.big_r_sq);
    let nu = match kind {
        MeasureKind::Distance => (rr2 - r2 + 2.0 * m1 * range.big_r() * headroom(theta, range)?.sqrt()) / (rr2 + r2),
        MeasureKind::Approximation => 1.0 - theta * theta / rr2,
        MeasureKind::Coherence => (rr2 - r2 + 2.0 * m1 * theta * rr2) / (rr2 + r2),
        MeasureKind::Babel => (rr2 - r2 + 2.0 * theta) / (rr2 + r2),
    };
    Ok(IsometryConstant { nu, rescale_factor: (sum / 2.0).sqrt() })
}
