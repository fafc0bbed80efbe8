use std::io::{Read, Write};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::config::AlgorithmId;
use crate::error::Result;
use crate::scenarios::ScenarioId;

/// Outcome of one replicate.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub scenario: ScenarioId,
    pub algo: AlgorithmId,
    pub delta: f64,
    pub rep: usize,
    pub seed: u64,
    pub success: bool,
    pub queries: u64,
    pub wall_time: Duration,
    /// `asii-ext` only.
    pub kept: Option<usize>,
    pub discarded: Option<usize>,
    /// Set when the algorithm returned an error; such runs count as failures.
    pub error: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct Row {
    scenario: ScenarioId,
    algo: AlgorithmId,
    delta: f64,
    rep: usize,
    seed: u64,
    success: u8,
    queries: u64,
    ms: f64,
    kept: Option<usize>,
    discarded: Option<usize>,
}

impl From<&RunRecord> for Row {
    fn from(r: &RunRecord) -> Self {
        Row {
            scenario: r.scenario,
            algo: r.algo,
            delta: r.delta,
            rep: r.rep,
            seed: r.seed,
            success: r.success as u8,
            queries: r.queries,
            ms: r.wall_time.as_secs_f64() * 1e3,
            kept: r.kept,
            discarded: r.discarded,
        }
    }
}

/// Columns `scenario,algo,delta,rep,seed,success,queries,ms,kept,discarded`;
/// the last two are empty outside `asii-ext`.
pub fn write_records<W: Write>(records: &[RunRecord], writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    for r in records {
        wtr.serialize(Row::from(r))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(reader: R) -> Result<Vec<RunRecord>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for row in rdr.deserialize() {
        let row: Row = row?;
        out.push(RunRecord {
            scenario: row.scenario,
            algo: row.algo,
            delta: row.delta,
            rep: row.rep,
            seed: row.seed,
            success: row.success != 0,
            queries: row.queries,
            wall_time: Duration::from_secs_f64(row.ms.max(0.0) / 1e3),
            kept: row.kept,
            discarded: row.discarded,
            error: None,
        });
    }
    Ok(out)
}
