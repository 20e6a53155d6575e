use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Default number of random coefficient vectors per check.
pub const DEFAULT_TRIALS: usize = 10_000;

/// Extremes observed by [`verify_isometry`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryExtremes {
    /// Smallest `αᵀK̃α / ‖α‖²` seen, with `K̃ = K̄ / s²`.
    pub worst_ratio_low: f64,
    pub worst_ratio_high: f64,
    /// Largest `|α′ᵀ(K̃ − I)α″| / (‖α′‖ ‖α″‖)` seen.
    pub worst_ip_deviation: f64,
}

impl IsometryExtremes {
    pub fn within(&self, nu: f64, slack: f64) -> bool {
        self.worst_ratio_low >= 1.0 - nu - slack
            && self.worst_ratio_high <= 1.0 + nu + slack
            && self.worst_ip_deviation <= nu + slack
    }
}

/// `αᵀAα / ‖α‖²`.
pub fn rayleigh_quotient(a: &DMatrix<f64>, alpha: &DVector<f64>) -> f64 {
    alpha.dot(&(a * alpha)) / alpha.norm_squared()
}

fn draw(rng: &mut ChaCha8Rng, m: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(m, |_, _| StandardNormal.sample(rng));
        if v.norm_squared() > 0.0 {
            return v;
        }
    }
}

/// Samples random coefficient vectors and records how far the rescaled Gram
/// matrix `K̄ / rescale_factor²` is from an isometry.
///
/// Trial `i` draws `α′` and `α″` with independent standard-normal entries
/// from a ChaCha8 stream keyed by `(seed, i)`, so results do not depend on
/// how trials are scheduled. All-zero draws are redrawn.
pub fn verify_isometry(
    gram: &DMatrix<f64>,
    rescale_factor: f64,
    trials: usize,
    seed: u64,
) -> Result<IsometryExtremes> {
    let m = gram.nrows();
    if m == 0 {
        return Err(Error::EmptyDictionary);
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be ≥ 1".into()));
    }
    if !(rescale_factor > 0.0) || !rescale_factor.is_finite() {
        return Err(Error::InvalidParameter(format!("rescale factor must be > 0, got {rescale_factor}")));
    }
    let scaled = gram / (rescale_factor * rescale_factor);
    let shifted = &scaled - DMatrix::<f64>::identity(m, m);
    let mut out = IsometryExtremes {
        worst_ratio_low: f64::INFINITY,
        worst_ratio_high: f64::NEG_INFINITY,
        worst_ip_deviation: 0.0,
    };
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let a1 = draw(&mut rng, m);
        let a2 = draw(&mut rng, m);
        let ratio = rayleigh_quotient(&scaled, &a1);
        out.worst_ratio_low = out.worst_ratio_low.min(ratio);
        out.worst_ratio_high = out.worst_ratio_high.max(ratio);
        let ip = a1.dot(&(&shifted * &a2)).abs() / (a1.norm() * a2.norm());
        out.worst_ip_deviation = out.worst_ip_deviation.max(ip);
    }
    Ok(out)
}
