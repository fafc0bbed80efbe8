use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SeriationError};
use crate::oracle::{NoiseKind, NoiseModel};
use crate::scenarios::ScenarioId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmId {
    Asii,
    AsiiExt,
    Naive,
    AdaptiveSorting,
    Spectral,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 5] = [
        Self::Asii,
        Self::AsiiExt,
        Self::Naive,
        Self::AdaptiveSorting,
        Self::Spectral,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Asii => "asii",
            Self::AsiiExt => "asii-ext",
            Self::Naive => "naive",
            Self::AdaptiveSorting => "adaptive-sorting",
            Self::Spectral => "spectral",
        }
    }

    /// Spends the budget uniformly before running.
    pub fn is_batch(self) -> bool {
        matches!(self, Self::AdaptiveSorting | Self::Spectral)
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = SeriationError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| SeriationError::Parse(format!("unknown algorithm `{s}`")))
    }
}

fn default_replicates() -> usize {
    100
}

fn default_groups() -> usize {
    10
}

/// One experiment grid. Serialized as flat JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenarios: Vec<ScenarioId>,
    pub algorithms: Vec<AlgorithmId>,
    pub delta_grid: Vec<f64>,
    pub n: usize,
    #[serde(alias = "budget_T", alias = "t")]
    pub budget_t: u64,
    pub sigma: f64,
    #[serde(default)]
    pub noise: NoiseKind,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    #[serde(default = "default_groups")]
    pub groups: usize,
    pub master_seed: u64,
    /// Tolerance for `asii-ext`; each cell's `Δ` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_tilde: Option<f64>,
    /// Source of the `file` scenario.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_path: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn noise_model(&self) -> Result<NoiseModel> {
        NoiseModel::new(self.noise, self.sigma)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(SeriationError::Config(msg));
        if self.scenarios.is_empty() || self.algorithms.is_empty() || self.delta_grid.is_empty() {
            return fail("scenarios, algorithms and delta_grid must be non-empty".into());
        }
        if self.scenarios.contains(&ScenarioId::File) && self.matrix_path.is_none() {
            return fail("the file scenario needs matrix_path".into());
        }
        if self.n < 2 && self.scenarios.iter().any(|&s| s != ScenarioId::File) {
            return fail(format!("n must be at least 2, got {}", self.n));
        }
        if self.delta_grid.iter().any(|&d| !(d > 0.0 && d.is_finite())) {
            return fail("delta_grid entries must be positive".into());
        }
        if self.delta_grid.windows(2).any(|w| w[0] >= w[1]) {
            return fail("delta_grid must be strictly increasing".into());
        }
        if self.replicates == 0 || self.groups == 0 || !self.replicates.is_multiple_of(self.groups) {
            return fail(format!(
                "replicates ({}) must be a positive multiple of groups ({})",
                self.replicates, self.groups
            ));
        }
        if let Some(t) = self.delta_tilde {
            if !(t > 0.0 && t.is_finite()) {
                return fail(format!("delta_tilde must be positive, got {t}"));
            }
        }
        self.noise_model()?;
        Ok(())
    }
}
