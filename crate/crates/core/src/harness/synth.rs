//! Synthetic data sources.
//!
//! * `sinc1d`: `x ~ U[−3, 3]`, `y = sin(x)/x + n` with `sin(0)/0 = 1`.
//! * `narma2`: the second-order nonlinear autoregression
//!   `y(t+1) = 0.4 y(t) + 0.4 y(t) y(t−1) + 0.6 u(t)³ + 0.1` driven by
//!   `u(t) ~ U[0, 0.5]` from `y(0) = y(−1) = 0`. Sample `t` has input
//!   `(y(t), y(t−1), u(t))` and target `y(t+1) + n`.
//!
//! `n` is Gaussian observation noise and does not feed back into the
//! recursion. All draws come from one ChaCha8 stream seeded by `seed`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub const DEFAULT_NOISE_STD: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Sinc1d,
    Narma2,
}

impl Generator {
    pub const ALL: [Generator; 2] = [Generator::Sinc1d, Generator::Narma2];

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Sinc1d => "sinc1d",
            Generator::Narma2 => "narma2",
        }
    }

    pub fn input_dim(&self) -> usize {
        match self {
            Generator::Sinc1d => 1,
            Generator::Narma2 => 3,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL.into_iter().find(|g| g.name() == s).ok_or_else(|| Error::UnknownGenerator {
            name: s.to_string(),
            valid: Generator::ALL.map(|g| g.name()).join(", "),
        })
    }
}

/// One input/target pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub x: Vec<f64>,
    pub y: f64,
}

/// `sin(x)/x`, continuous at 0.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Noise-free NARMA step.
pub fn narma2_step(y: f64, y_prev: f64, u: f64) -> f64 {
    0.4 * y + 0.4 * y * y_prev + 0.6 * u * u * u + 0.1
}

pub fn synthesize(generator: Generator, seed: u64, length: usize, noise_std: f64) -> Result<Vec<Sample>> {
    if !(noise_std >= 0.0) || !noise_std.is_finite() {
        return Err(Error::InvalidParameter(format!("noise std must be finite and ≥ 0, got {noise_std}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = |rng: &mut ChaCha8Rng| -> f64 {
        let z: f64 = StandardNormal.sample(rng);
        noise_std * z
    };
    let mut out = Vec::with_capacity(length);
    match generator {
        Generator::Sinc1d => {
            for _ in 0..length {
                let x = rng.random_range(-3.0..=3.0);
                let y = sinc(x) + noise(&mut rng);
                out.push(Sample { x: vec![x], y });
            }
        }
        Generator::Narma2 => {
            let (mut y, mut y_prev) = (0.0, 0.0);
            for _ in 0..length {
                let u = rng.random_range(0.0..=0.5);
                let next = narma2_step(y, y_prev, u);
                out.push(Sample { x: vec![y, y_prev, u], y: next + noise(&mut rng) });
                y_prev = y;
                y = next;
            }
        }
    }
    Ok(out)
}
