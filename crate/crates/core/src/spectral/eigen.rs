use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::check_symmetric;

/// Entries further than this from their transpose are rejected.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Sweeps stop once every off-diagonal entry is below this fraction of `‖A‖_F`.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-12;

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectrum {
    /// Eigenvalues in non-increasing order.
    pub values: Vec<f64>,
    /// Orthogonal matrix whose columns are the matching eigenvectors.
    pub vectors: DMatrix<f64>,
}

impl EigenSpectrum {
    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }

    /// `λ_max / λ_min`, or `+∞` when `λ_min ≤ 0`.
    pub fn condition_number(&self) -> f64 {
        let lo = self.min();
        if lo > 0.0 {
            self.max() / lo
        } else {
            f64::INFINITY
        }
    }

    /// `V Λ Vᵀ`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            scaled.column_mut(j).scale_mut(self.values[j]);
        }
        scaled * self.vectors.transpose()
    }
}

/// Cyclic Jacobi eigendecomposition.
///
/// Runs rotation sweeps over every `(p, q)` pair until the largest
/// off-diagonal magnitude falls below `1e-12 · ‖A‖_F`, for at most 100 sweeps.
/// Eigenvector signs are normalized so the largest-magnitude component of
/// each column is positive.
pub fn eigensolve(a: &DMatrix<f64>) -> Result<EigenSpectrum> {
    check_symmetric(a, SYMMETRY_TOLERANCE)?;
    let n = a.nrows();
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut w = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let stop = JACOBI_OFF_DIAGONAL * a.norm();

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(w[(p, q)].abs());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (w[(q, q)] - w[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                w[(p, p)] -= t * apq;
                w[(q, q)] += t * apq;
                w[(p, q)] = 0.0;
                w[(q, p)] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let arp = w[(r, p)];
                        let arq = w[(r, q)];
                        let np = c * arp - s * arq;
                        let nq = s * arp + c * arq;
                        w[(r, p)] = np;
                        w[(p, r)] = np;
                        w[(r, q)] = nq;
                        w[(q, r)] = nq;
                    }
                    let vrp = v[(r, p)];
                    let vrq = v[(r, q)];
                    v[(r, p)] = c * vrp - s * vrq;
                    v[(r, q)] = s * vrp + c * vrq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(j, j)].total_cmp(&w[(i, i)]));
    let values: Vec<f64> = order.iter().map(|&i| w[(i, i)]).collect();
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = v.column(src).clone_owned();
        let lead = col.iter().copied().fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
        if lead < 0.0 {
            col.neg_mut();
        }
        vectors.set_column(dst, &col);
    }
    Ok(EigenSpectrum { values, vectors })
}
