use nalgebra::DMatrix;

use super::bounds::{condition_number_bound, eigen_bounds, isometry_constant, lin_indep_condition};
use super::discs::{gersgorin_intervals, in_union};
use super::eigen::{eigensolve, EigenSpectrum};
use super::isometry::{verify_isometry, IsometryExtremes};
use crate::dictionary::{Dictionary, MeasureKind};
use crate::error::{Error, Result};
use crate::kernel::NormRange;
use crate::numfmt::num;

/// Absolute slack used for every containment check in a report.
pub const CONTAINMENT_SLACK: f64 = 1e-9;

pub const CSV_HEADER: &str = "kind,measure,lower,upper,lambda_min,lambda_max,cond,cond_bound,nu,worst_ratio_low,worst_ratio_high,worst_ip_dev,violated";

/// Bounds derived from one sparsity measure, next to what the Gram matrix
/// actually does.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSet {
    pub kind: MeasureKind,
    pub measure_value: f64,
    pub lower: f64,
    pub upper: f64,
    pub vacuous: bool,
    pub lin_indep_condition_holds: bool,
    pub cond_number_bound: f64,
    pub isometry_nu: f64,
    pub rescale_factor: f64,
    pub isometry: Option<IsometryExtremes>,
    pub violated: bool,
}

/// A failed containment check and how far it missed.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub bound: String,
    pub kind: Option<MeasureKind>,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub m: usize,
    pub norm_range: NormRange,
    pub spectrum: EigenSpectrum,
    pub per_measure: Vec<BoundSet>,
    pub violations: Vec<Violation>,
}

/// Measure value used by reports.
///
/// Single-atom dictionaries have no pairs: coherence and Babel are 0 and the
/// distance and approximation measures are taken as the atom's own norm
/// `√κ(x̄₁, x̄₁)` (its residual against the empty span). When some `K̄_{∖i}`
/// is singular the atoms are linearly dependent, so the approximation
/// measure is exactly 0.
pub fn report_measure(dict: &Dictionary, kind: MeasureKind) -> Result<f64> {
    if dict.len() == 1 {
        return Ok(match kind {
            MeasureKind::Coherence | MeasureKind::Babel => 0.0,
            _ => dict.gram()[(0, 0)].max(0.0).sqrt(),
        });
    }
    match dict.measure(kind) {
        Err(Error::Singular(_)) if kind == MeasureKind::Approximation => Ok(0.0),
        other => other,
    }
}

impl SpectralReport {
    /// Runs every bound against the exact spectrum of `dict`'s Gram matrix.
    ///
    /// `trials` random coefficient vectors per measure are fed to
    /// [`verify_isometry`]; pass 0 to skip the sampling.
    pub fn compute(dict: &Dictionary, range: &NormRange, trials: usize, seed: u64) -> Result<Self> {
        if dict.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        let gram: &DMatrix<f64> = dict.gram();
        let m = dict.len();
        let spectrum = eigensolve(gram)?;
        let (lmin, lmax) = (spectrum.min(), spectrum.max());
        let cond = spectrum.condition_number();
        let mut violations = Vec::new();

        let discs = gersgorin_intervals(gram);
        for &lambda in &spectrum.values {
            if !in_union(&discs, lambda, CONTAINMENT_SLACK) {
                let margin = discs
                    .iter()
                    .map(|d| (lambda - d.center).abs() - d.radius)
                    .fold(f64::INFINITY, f64::min);
                violations.push(Violation { bound: "gersgorin".into(), kind: None, margin });
            }
        }

        let mut per_measure = Vec::with_capacity(4);
        for kind in MeasureKind::ALL {
            let theta = report_measure(dict, kind)?;
            let b = eigen_bounds(kind, theta, m, range)?;
            let cond_bound = condition_number_bound(kind, theta, m, range);
            let (nu, rescale) = match isometry_constant(kind, theta, m, range) {
                Ok(i) => (i.nu, i.rescale_factor),
                Err(Error::VacuousBounds(_)) => (f64::NAN, f64::NAN),
                Err(e) => return Err(e),
            };
            let isometry = if trials > 0 && nu.is_finite() {
                Some(verify_isometry(gram, rescale, trials, seed)?)
            } else {
                None
            };

            let mut found = Vec::new();
            if lmin < b.lower - CONTAINMENT_SLACK {
                found.push(("eigen_lower", b.lower - lmin));
            }
            if lmax > b.upper + CONTAINMENT_SLACK {
                found.push(("eigen_upper", lmax - b.upper));
            }
            if cond_bound.is_finite() && cond > cond_bound * (1.0 + CONTAINMENT_SLACK) {
                found.push(("cond_bound", cond - cond_bound));
            }
            if let Some(e) = &isometry {
                if e.worst_ratio_low < 1.0 - nu - CONTAINMENT_SLACK {
                    found.push(("isometry_low", 1.0 - nu - e.worst_ratio_low));
                }
                if e.worst_ratio_high > 1.0 + nu + CONTAINMENT_SLACK {
                    found.push(("isometry_high", e.worst_ratio_high - 1.0 - nu));
                }
                if e.worst_ip_deviation > nu + CONTAINMENT_SLACK {
                    found.push(("isometry_ip", e.worst_ip_deviation - nu));
                }
            }
            let violated = !found.is_empty();
            violations.extend(found.into_iter().map(|(name, margin)| Violation {
                bound: name.to_string(),
                kind: Some(kind),
                margin,
            }));

            per_measure.push(BoundSet {
                kind,
                measure_value: theta,
                lower: b.lower,
                upper: b.upper,
                vacuous: b.is_vacuous(),
                lin_indep_condition_holds: lin_indep_condition(kind, theta, m, range),
                cond_number_bound: cond_bound,
                isometry_nu: nu,
                rescale_factor: rescale,
                isometry,
                violated,
            });
        }

        Ok(SpectralReport { m, norm_range: *range, spectrum, per_measure, violations })
    }

    pub fn bound_set(&self, kind: MeasureKind) -> &BoundSet {
        self.per_measure.iter().find(|b| b.kind == kind).expect("every kind is reported")
    }

    pub fn violations_for(&self, kind: MeasureKind) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.kind == Some(kind))
    }

    /// One header line plus one row per measure kind.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        let lmin = self.spectrum.min();
        let lmax = self.spectrum.max();
        let cond = self.spectrum.condition_number();
        for b in &self.per_measure {
            let (lo, hi, ip) = match &b.isometry {
                Some(e) => (e.worst_ratio_low, e.worst_ratio_high, e.worst_ip_deviation),
                None => (f64::NAN, f64::NAN, f64::NAN),
            };
            let row = [
                b.kind.name().to_string(),
                num(b.measure_value),
                num(b.lower),
                num(b.upper),
                num(lmin),
                num(lmax),
                num(cond),
                num(b.cond_number_bound),
                num(b.isometry_nu),
                num(lo),
                num(hi),
                num(ip),
                (b.violated as u8).to_string(),
            ];
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
