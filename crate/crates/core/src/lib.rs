//! Sparse kernel dictionaries for online learning.
//!
//! A [`Dictionary`] keeps a small set of atoms selected from a sample stream
//! by one of four sparsification criteria ([`MeasureKind`]), together with
//! their Gram matrix and its inverse. [`spectral`] turns each sparsity
//! measure into eigenvalue, condition-number and quasi-isometry bounds and
//! checks them against the exact spectrum. [`learners`] runs online updates
//! over a dictionary, [`ridge`] solves the batch problem on all samples, and
//! [`harness`] drives experiments and writes their CSV outputs.
//!
//! ```
//! use kdict::learners::{Algorithm, LearnerConfig, OnlineLearner};
//! use kdict::spectral::SpectralReport;
//! use kdict::{Criterion, Dictionary, Kernel, MeasureKind, NormRange};
//!
//! let dict = Dictionary::new(
//!     Kernel::gaussian(0.5).unwrap(),
//!     Criterion::new(MeasureKind::Coherence, 0.5).unwrap(),
//! );
//! let cfg = LearnerConfig::new(Algorithm::Nlms, 0.5, 1e-6).unwrap();
//! let mut learner = OnlineLearner::new(dict, cfg).unwrap();
//! for i in 0..500 {
//!     let x = -3.0 + 6.0 * ((i * 37) % 500) as f64 / 500.0;
//!     learner.step(&[x], x.cos()).unwrap();
//! }
//! let report = SpectralReport::compute(learner.dictionary(), &NormRange::unit(), 500, 1).unwrap();
//! assert!(!report.bound_set(MeasureKind::Coherence).violated);
//! ```

// `!(x > 0.0)` is the NaN-rejecting form used throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dictionary;
pub mod error;
pub mod harness;
pub mod kernel;
pub mod learners;
pub mod linalg;
pub mod numfmt;
pub mod ridge;
pub mod spectral;

pub use dictionary::{Admission, Criterion, Dictionary, MeasureKind, Projection};
pub use error::{Error, Result};
pub use kernel::{Kernel, NormRange, NormSource};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    pub mod kernels {}
    #[doc = include_str!("../../../book/src/dictionaries.md")]
    pub mod dictionaries {}
    #[doc = include_str!("../../../book/src/spectral-bounds.md")]
    pub mod spectral_bounds {}
    #[doc = include_str!("../../../book/src/isometry.md")]
    pub mod isometry {}
    #[doc = include_str!("../../../book/src/learners.md")]
    pub mod learners {}
    #[doc = include_str!("../../../book/src/ridge.md")]
    pub mod ridge {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
