use std::time::Instant;

use rayon::prelude::*;

use super::config::{AlgorithmId, ExperimentConfig};
use super::records::RunRecord;
use crate::asii::asii;
use crate::baselines::{adaptive_sorting, batch_observe, naive_insertion, spectral_seriation};
use crate::error::Result;
use crate::extension::asii_extension;
use crate::matrix::SimilarityMatrix;
use crate::oracle::Oracle;
use crate::permutation::{is_recovery_success, Permutation};
use crate::rng::{derive_seed, str_component, Stream};
use crate::scenarios::{apply_permutation, generate, load_matrix_csv, ScenarioId, ScenarioSpec};

/// One point of the experiment grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub scenario: ScenarioId,
    pub algo: AlgorithmId,
    pub delta: f64,
}

/// Seed of replicate `rep` in `cell`; independent of every other cell.
pub fn replicate_seed(master_seed: u64, cell: &Cell, rep: usize) -> u64 {
    derive_seed(&[
        master_seed,
        str_component(cell.scenario.as_str()),
        str_component(cell.algo.as_str()),
        cell.delta.to_bits(),
        rep as u64,
    ])
}

const SCENARIO_STREAM: u64 = 1;
const PERMUTATION_STREAM: u64 = 2;
const ORACLE_STREAM: u64 = 3;

/// Runs a single replicate. `fixed` is the Robinson matrix when it does not
/// depend on the replicate (everything except `s4`).
pub fn run_replicate(
    cfg: &ExperimentConfig,
    cell: &Cell,
    rep: usize,
    fixed: Option<&SimilarityMatrix>,
) -> Result<RunRecord> {
    let seed = replicate_seed(cfg.master_seed, cell, rep);
    let generated;
    let r = match fixed {
        Some(r) => r,
        None => {
            generated = generate(&ScenarioSpec::synthetic(
                cell.scenario,
                cfg.n,
                cell.delta,
                derive_seed(&[seed, SCENARIO_STREAM]),
            ))?;
            &generated
        }
    };
    let n = r.n();
    let truth = Permutation::random(n, &mut Stream::new(derive_seed(&[seed, PERMUTATION_STREAM])));
    let m = apply_permutation(r, &truth)?;
    let mut o = Oracle::new(m, cfg.noise_model()?, derive_seed(&[seed, ORACLE_STREAM]));

    let started = Instant::now();
    let mut kept = None;
    let mut discarded = None;
    let outcome: Result<bool> = (|| match cell.algo {
        AlgorithmId::Asii => is_recovery_success(&asii(&mut o, cfg.budget_t, None)?, &truth),
        AlgorithmId::Naive => {
            is_recovery_success(&naive_insertion(&mut o, cfg.budget_t, None)?, &truth)
        }
        AlgorithmId::AdaptiveSorting => {
            let y = batch_observe(&mut o, cfg.budget_t)?;
            is_recovery_success(&adaptive_sorting(&y), &truth)
        }
        AlgorithmId::Spectral => {
            let y = batch_observe(&mut o, cfg.budget_t)?;
            is_recovery_success(&spectral_seriation(&y)?, &truth)
        }
        AlgorithmId::AsiiExt => {
            let tol = cfg.delta_tilde.unwrap_or(cell.delta);
            let res = asii_extension(&mut o, cfg.budget_t, tol, None)?;
            kept = Some(res.kept.len());
            discarded = Some(res.discarded.len());
            Ok(res.kept.agrees_with(&truth))
        }
    })();
    let wall_time = started.elapsed();

    let (success, error) = match outcome {
        Ok(s) => (s, None),
        Err(e) => {
            log::warn!("{} {} delta={} rep={rep}: {e}", cell.scenario, cell.algo, cell.delta);
            (false, Some(e.to_string()))
        }
    };
    Ok(RunRecord {
        scenario: cell.scenario,
        algo: cell.algo,
        delta: cell.delta,
        rep,
        seed,
        success,
        queries: o.ledger().total(),
        wall_time,
        kept,
        discarded,
        error,
    })
}

fn fixed_matrix(cfg: &ExperimentConfig, scenario: ScenarioId, delta: f64) -> Result<Option<SimilarityMatrix>> {
    match scenario {
        ScenarioId::S4 => Ok(None),
        ScenarioId::File => {
            let path = cfg.matrix_path.as_deref().expect("validated config");
            Ok(Some(load_matrix_csv(path)?))
        }
        id => Ok(Some(generate(&ScenarioSpec::synthetic(id, cfg.n, delta, 0))?)),
    }
}

/// All replicates of one cell, in replicate order. Replicates run in parallel.
pub fn run_cell(cfg: &ExperimentConfig, cell: &Cell) -> Result<Vec<RunRecord>> {
    let fixed = fixed_matrix(cfg, cell.scenario, cell.delta)?;
    let mut records = (0..cfg.replicates)
        .into_par_iter()
        .map(|rep| run_replicate(cfg, cell, rep, fixed.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| r.rep);
    Ok(records)
}

/// Every cell of the grid, ordered by scenario, then algorithm, then `Δ`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for &scenario in &cfg.scenarios {
        for &algo in &cfg.algorithms {
            for &delta in &cfg.delta_grid {
                let cell = Cell {
                    scenario,
                    algo,
                    delta,
                };
                log::info!("running {scenario} / {algo} / delta = {delta}");
                out.extend(run_cell(cfg, &cell)?);
            }
        }
    }
    Ok(out)
}
