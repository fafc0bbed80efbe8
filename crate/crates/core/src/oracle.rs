//! Active observation channel: noisy draws of `M_ij` with query accounting.

use crate::error::{Result, SeriationError};
use crate::matrix::SimilarityMatrix;
use crate::rng::Stream;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    #[default]
    Gaussian,
    /// Uniform on `[-σ√3, σ√3]`: variance σ², sub-Gaussian with parameter σ√3.
    BoundedUniform,
    Noiseless,
}

impl FromStr for NoiseKind {
    type Err = SeriationError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Self::Gaussian),
            "bounded-uniform" | "uniform" => Ok(Self::BoundedUniform),
            "noiseless" => Ok(Self::Noiseless),
            other => Err(SeriationError::Parse(format!("unknown noise kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    kind: NoiseKind,
    sigma: f64,
}

impl NoiseModel {
    pub fn new(kind: NoiseKind, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(SeriationError::Config(format!("invalid noise level {sigma}")));
        }
        Ok(match kind {
            NoiseKind::Noiseless => Self::noiseless(),
            _ if sigma == 0.0 => Self::noiseless(),
            kind => Self { kind, sigma },
        })
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        Self::new(NoiseKind::Gaussian, sigma)
    }

    pub fn bounded_uniform(sigma: f64) -> Result<Self> {
        Self::new(NoiseKind::BoundedUniform, sigma)
    }

    pub fn noiseless() -> Self {
        Self {
            kind: NoiseKind::Noiseless,
            sigma: 0.0,
        }
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    #[inline]
    fn draw(&self, stream: &mut Stream) -> f64 {
        match self.kind {
            NoiseKind::Gaussian => self.sigma * stream.standard_normal(),
            NoiseKind::BoundedUniform => {
                let half = self.sigma * 3f64.sqrt();
                stream.uniform_in(-half, half)
            }
            NoiseKind::Noiseless => 0.0,
        }
    }
}

/// Sample counts per unordered pair and in total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryLedger {
    n: usize,
    total: u64,
    // strict upper triangle, row-major
    per_pair: Vec<u64>,
}

impl QueryLedger {
    fn new(n: usize) -> Self {
        Self {
            n,
            total: 0,
            per_pair: vec![0; n * n.saturating_sub(1) / 2],
        }
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    fn record(&mut self, i: usize, j: usize, count: u64) {
        let s = self.slot(i, j);
        self.per_pair[s] += count;
        self.total += count;
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// `N_{i,j}`; zero for `i == j`.
    pub fn pair_count(&self, i: usize, j: usize) -> u64 {
        if i == j {
            0
        } else {
            self.per_pair[self.slot(i, j)]
        }
    }

    /// Nonzero pair counts as `((i, j), count)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .zip(self.per_pair.iter().copied())
            .filter(|&(_, c)| c > 0)
    }
}

/// Hidden similarity matrix behind a seeded noisy sampling channel.
///
/// The oracle never refuses a query; budget policy belongs to the caller.
#[derive(Debug, Clone)]
pub struct Oracle {
    matrix: SimilarityMatrix,
    noise: NoiseModel,
    ledger: QueryLedger,
    stream: Stream,
    clamped: u64,
}

impl Oracle {
    pub fn new(matrix: SimilarityMatrix, noise: NoiseModel, seed: u64) -> Self {
        let n = matrix.n();
        Self {
            matrix,
            noise,
            ledger: QueryLedger::new(n),
            stream: Stream::new(seed),
            clamped: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn noise(&self) -> NoiseModel {
        self.noise
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    /// Hidden matrix; for scoring and diagnostics only, never for algorithms.
    pub fn matrix(&self) -> &SimilarityMatrix {
        &self.matrix
    }

    /// Mean of `count` independent noisy draws of `M_ij`.
    pub fn sample_pair_mean(&mut self, i: usize, j: usize, count: u64) -> Result<f64> {
        let n = self.n();
        for item in [i, j] {
            if item >= n {
                return Err(SeriationError::ItemOutOfRange { item, n });
            }
        }
        if i == j {
            return Err(SeriationError::SelfPair(i));
        }
        if count == 0 {
            return Err(SeriationError::DegenerateBudget(format!(
                "zero samples requested for pair ({i}, {j})"
            )));
        }
        self.ledger.record(i, j, count);
        let mean = self.matrix.get(i, j);
        if self.noise.kind == NoiseKind::Noiseless {
            return Ok(mean);
        }
        let mut acc = 0.0;
        for _ in 0..count {
            acc += self.noise.draw(&mut self.stream);
        }
        Ok(mean + acc / count as f64)
    }

    /// `budget - total`, possibly negative.
    pub fn remaining_budget(&self, budget: u64) -> i64 {
        budget as i64 - self.ledger.total as i64
    }

    /// Notes that a caller raised a zero per-pair sample count to one.
    pub fn note_clamp(&mut self) {
        self.clamped += 1;
    }

    /// Number of calls whose per-pair sample count was clamped up to one.
    pub fn clamp_events(&self) -> u64 {
        self.clamped
    }
}
