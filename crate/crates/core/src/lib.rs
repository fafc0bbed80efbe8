//! Active seriation: recovering the latent ordering of a pre-Robinson
//! similarity matrix from adaptively chosen noisy pairwise samples.
//!
//! The main entry points are [`asii`] for full orderings and
//! [`asii_extension`] for the tolerance-based variant that discards items
//! whose placement cannot be certified. [`baselines`] holds the reference
//! methods, [`scenarios`] the synthetic matrices and CSV I/O, and
//! [`harness`] the Monte Carlo runner.

pub mod asii;
pub mod baselines;
pub mod brute;
pub mod error;
pub mod extension;
pub mod harness;
pub mod matrix;
pub mod oracle;
pub mod permutation;
pub mod rng;
pub mod scenarios;

pub use asii::{asii, asii_with, AsiiOptions, AsiiReport, AsiiRun, Instrument, Ranking, TestOutcome};
pub use brute::brute_force_seriate;
pub use error::{Result, SeriationError};
pub use extension::{asii_extension, verify_delta_maximal, Discard, DiscardReason, ExtensionResult};
pub use matrix::{GapRange, MinimalGapReport, SimilarityMatrix};
pub use oracle::{NoiseKind, NoiseModel, Oracle, QueryLedger};
pub use permutation::{is_recovery_success, Permutation, RankMap};
pub use scenarios::{apply_permutation, generate, ScenarioId, ScenarioSpec};
