//! Indoor-hotspot path loss modeling and validation toolkit.
//!
//! This crate bundles everything needed to compare empirical path loss fits
//! against the 3GPP TR 38.901 indoor-hotspot (InH) model:
//!
//! - [`models`] — pure evaluators for the free-space anchor, the
//!   floating-intercept (FI), alpha-beta-gamma (ABG) and close-in (CI)
//!   families, and the TR 38.901 InH LOS/NLOS equations.
//! - [`fit`] — closed-form least-squares fitters for FI/ABG/CI with a
//!   brute-force grid oracle for verification.
//! - [`synth`] — deterministic synthetic sample generation on distance
//!   grids, with optional seeded Gaussian shadow fading.
//! - [`io`] — CSV ingest/emit for measured point data and partitioning
//!   into per-frequency, per-condition and band groups.
//! - [`report`] — the end-to-end validation pipeline producing
//!   measured-vs-model comparison tables and plot series.
//!
//! All evaluation and fitting is deterministic: identical inputs (including
//! seeds) produce bitwise-identical outputs.

pub mod fit;
pub mod io;
pub mod models;
pub mod report;
pub mod sample;
pub mod synth;

pub use fit::{fit_abg, fit_ci, fit_fi, FitDiagnostics, FitError};
pub use models::{
    AbgParams, CiParams, Condition, DomainMode, FiParams, ModelError, NlosOption, ThreeGppInhSpec,
};
pub use sample::PathLossSample;
pub use synth::{DistanceGrid, ShadowFading, Spacing, SynthConfig, SynthModel};
