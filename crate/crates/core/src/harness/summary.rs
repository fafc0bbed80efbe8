use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::config::AlgorithmId;
use super::records::RunRecord;
use crate::error::{Result, SeriationError};
use crate::scenarios::ScenarioId;

/// One point of an error curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub scenario: ScenarioId,
    pub algo: AlgorithmId,
    pub delta: f64,
    pub mean_error: f64,
    pub q10: f64,
    pub q90: f64,
    pub n_reps: usize,
}

/// Nearest-rank quantile: the `⌈p·G/100⌉`-th smallest of `G` values.
pub fn nearest_rank(sorted: &[f64], percent: usize) -> f64 {
    let g = sorted.len();
    let rank = (percent * g).div_ceil(100).max(1);
    sorted[rank - 1]
}

/// Error curves per `(scenario, algo, delta)`, in order of first appearance.
///
/// Replicates are sorted by index and cut into `groups` consecutive blocks;
/// the band is the 10% and 90% nearest-rank quantiles of the block error rates.
pub fn summarize(records: &[RunRecord], groups: usize) -> Result<Vec<CurveRow>> {
    if records.is_empty() {
        return Err(SeriationError::Config("no records to summarize".into()));
    }
    if groups == 0 {
        return Err(SeriationError::Config("groups must be positive".into()));
    }
    let mut keys: Vec<(ScenarioId, AlgorithmId, u64)> = Vec::new();
    for r in records {
        let key = (r.scenario, r.algo, r.delta.to_bits());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    let mut out = Vec::with_capacity(keys.len());
    for (scenario, algo, bits) in keys {
        let mut cell: Vec<&RunRecord> = records
            .iter()
            .filter(|r| r.scenario == scenario && r.algo == algo && r.delta.to_bits() == bits)
            .collect();
        cell.sort_by_key(|r| r.rep);
        let reps = cell.len();
        if !reps.is_multiple_of(groups) {
            return Err(SeriationError::Config(format!(
                "{reps} replicates for {scenario}/{algo}/{} are not divisible into {groups} groups",
                f64::from_bits(bits)
            )));
        }
        let failures = cell.iter().filter(|r| !r.success).count();
        let size = reps / groups;
        let mut means: Vec<f64> = cell
            .chunks(size)
            .map(|c| c.iter().filter(|r| !r.success).count() as f64 / size as f64)
            .collect();
        means.sort_by(f64::total_cmp);
        out.push(CurveRow {
            scenario,
            algo,
            delta: f64::from_bits(bits),
            mean_error: failures as f64 / reps as f64,
            q10: nearest_rank(&means, 10),
            q90: nearest_rank(&means, 90),
            n_reps: reps,
        });
    }
    Ok(out)
}

/// Columns `scenario,algo,delta,mean_error,q10,q90,n_reps`.
pub fn write_curves<W: Write>(rows: &[CurveRow], writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    for r in rows {
        wtr.serialize(r)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_curves<R: Read>(reader: R) -> Result<Vec<CurveRow>> {
    let mut rdr = csv::Reader::from_reader(reader);
    Ok(rdr.deserialize().collect::<std::result::Result<_, _>>()?)
}
