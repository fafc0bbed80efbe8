//! Reference algorithms: naive insertion (active) and two batch methods
//! fed through a uniform-sampling adapter.

pub mod adaptive_sorting;
pub mod batch;
pub mod jacobi;
pub mod naive;
pub mod spectral;

pub use adaptive_sorting::{adaptive_sorting, adaptive_sorting_with, ExclusionRule};
pub use batch::{batch_observe, BatchObservation};
pub use jacobi::{jacobi_eigen, SymmetricEigen};
pub use naive::naive_insertion;
pub use spectral::{fiedler_order, spectral_order, spectral_seriation};
