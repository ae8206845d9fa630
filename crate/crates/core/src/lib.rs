//! Periodic overlapping group shrinkage (POGS).
//!
//! Denoises signals whose useful content is a train of short transients
//! repeating at a known rate, as produced by localized defects in
//! rotating machinery. The estimate minimizes a least-squares objective
//! regularized by a concave penalty of binary-weighted overlapping block
//! norms; laying the binary weights out periodically ties the sparsity
//! structure to the fault period, while keeping the non-convexity
//! parameter below `1 / (active_count * lambda)` keeps the whole
//! objective strictly convex and the solution unique.
//!
//! Modules:
//! - [`penalty`]: the penalty family and its convexity bound.
//! - [`pattern`]: periodic, contiguous, and explicit binary weight layouts.
//! - [`solver`]: the surrogate-minimization iteration.
//! - [`signalgen`]: seeded synthetic fault-signal generation.
//! - [`noise`]: robust noise estimation and lambda selection.
//! - [`metrics`]: RMSE and transient-wise detection curves.
//! - [`spectral`]: magnitude and envelope spectra, fault frequencies.
//! - [`io`]: deterministic CSV/JSON persistence.

pub mod error;
pub mod io;
pub mod metrics;
pub mod noise;
pub mod pattern;
pub mod penalty;
pub mod signalgen;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use metrics::{relabel, rmse, roc, RocCurve, TransientLabels};
pub use noise::{estimate_sigma, lambda_from_table, lambda_multiplier};
pub use pattern::{GroupPattern, PeriodicLayout};
pub use penalty::{max_nonconvexity, Penalty, PenaltyFamily};
pub use signalgen::{simulate, LabeledSignal, SimConfig};
pub use solver::{denoise, denoise_with_init, group_norm, objective, DenoiseResult, SolverConfig};
pub use spectral::{
    envelope_spectrum, fault_frequencies, magnitude_spectrum, BearingSpec, FaultFrequencies,
    Spectrum,
};
