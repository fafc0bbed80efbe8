use crate::error::{Result, SeriationError};
use crate::matrix::SimilarityMatrix;
use crate::oracle::Oracle;

/// A single noisy matrix `Y` built by spending the budget uniformly over pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchObservation {
    /// Off-diagonal entries are empirical means; the diagonal is zero and unused.
    pub y: SimilarityMatrix,
    pub samples_per_pair: u64,
}

/// Samples every unordered pair `⌊T / n²⌋` times.
pub fn batch_observe(o: &mut Oracle, budget: u64) -> Result<BatchObservation> {
    let n = o.n();
    let per_pair = budget / (n as u64 * n as u64);
    if per_pair == 0 {
        return Err(SeriationError::DegenerateBudget(format!(
            "budget {budget} gives no sample per pair for n = {n}"
        )));
    }
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = o.sample_pair_mean(i, j, per_pair)?;
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    Ok(BatchObservation {
        y: SimilarityMatrix::new(n, data)?,
        samples_per_pair: per_pair,
    })
}
