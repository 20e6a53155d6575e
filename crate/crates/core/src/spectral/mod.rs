//! Spectral behaviour of dictionary Gram matrices.
//!
//! [`eigensolve`] gives the exact spectrum, [`gersgorin_intervals`] the
//! row-disc enclosure, and the functions in [`bounds`] the closed-form
//! eigenvalue, conditioning and quasi-isometry bounds implied by each
//! sparsity measure. [`SpectralReport`] puts them side by side.

pub mod bounds;
mod discs;
mod eigen;
mod isometry;
mod report;

pub use bounds::{
    condition_number_bound, eigen_bounds, isometry_constant, lin_indep_condition, EigenBounds,
    IsometryConstant,
};
pub use discs::{gersgorin_intervals, in_union, Disc};
pub use eigen::{eigensolve, EigenSpectrum, JACOBI_MAX_SWEEPS, JACOBI_OFF_DIAGONAL, SYMMETRY_TOLERANCE};
pub use isometry::{rayleigh_quotient, verify_isometry, IsometryExtremes, DEFAULT_TRIALS};
pub use report::{report_measure, BoundSet, SpectralReport, Violation, CONTAINMENT_SLACK, CSV_HEADER};
