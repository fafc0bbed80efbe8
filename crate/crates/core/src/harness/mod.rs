//! Monte Carlo experiments over scenario × algorithm × Δ grids, plus
//! one-shot seriation of a matrix file.

mod config;
mod records;
mod run;
mod seriate;
mod summary;

pub use config::{AlgorithmId, ExperimentConfig};
pub use records::{read_records, write_records, RunRecord};
pub use run::{replicate_seed, run_cell, run_experiment, run_replicate, Cell};
pub use seriate::{seriate_file, SeriateOutput, SeriateRequest};
pub use summary::{nearest_rank, read_curves, summarize, write_curves, CurveRow};
