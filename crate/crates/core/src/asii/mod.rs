//! Active seriation by iterative insertion.
//!
//! Items are inserted one at a time into a growing ranking. Each new item
//! is first compared with the two current extremes; if it falls between
//! them its slot is found with [`bbs`].

pub mod bbs;
pub mod ranking;

pub use bbs::{bbs, BbsAction, BbsBudget, BbsOutcome, BbsStep, BbsTrace, Instrument, IntervalStack};
pub use ranking::Ranking;
pub use test::{sample_triad, test, TestOutcome, TriadMeans, TriadTest};

use crate::error::{Result, SeriationError};
use crate::oracle::Oracle;
use crate::permutation::Permutation;

/// Optional inputs of an insertion run.
#[derive(Debug, Clone, Copy, Default)]
pub struct AsiiOptions<'a> {
    /// Correct ordering of items `0..m`. Used only when `m >= 3`.
    pub partial: Option<&'a Permutation>,
    pub instrument: Instrument<'a>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRecord {
    pub rounds: usize,
    pub per_test_budget: u64,
    pub tests_run: usize,
    pub queries: u64,
    pub position: usize,
    pub trace: Option<BbsTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionRecord {
    pub item: usize,
    pub extremes: TestOutcome,
    /// `t0` handed to the extremes test.
    pub extremes_budget: u64,
    pub extremes_queries: u64,
    pub search: Option<SearchRecord>,
    /// Rank the item received.
    pub rank: usize,
    /// Whether the ranking agrees with the truth after this insertion
    /// (instrumented runs only).
    pub coherent: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsiiReport {
    pub n_tilde: usize,
    pub k0: usize,
    pub insertions: Vec<InsertionRecord>,
    pub total_queries: u64,
    pub clamp_events: u64,
}

#[derive(Debug, Clone)]
pub struct AsiiRun {
    pub permutation: Permutation,
    pub report: AsiiReport,
}

/// Initial ranking, `ñ` and `k0` for a run on `n` items.
#[derive(Debug, Clone)]
pub(crate) struct Start {
    pub ranking: Ranking,
    pub n_tilde: usize,
    pub k0: usize,
}

pub(crate) fn start(n: usize, partial: Option<&Permutation>) -> Result<Start> {
    if n == 0 {
        return Err(SeriationError::Config("no items".into()));
    }
    if let Some(p) = partial {
        if p.len() > n {
            return Err(SeriationError::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
        if p.len() >= 3 {
            return Ok(Start {
                ranking: Ranking::from_order(n, &p.order()),
                n_tilde: n - p.len(),
                k0: p.len(),
            });
        }
    }
    let init: &[usize] = if n == 1 { &[0] } else { &[0, 1] };
    Ok(Start {
        ranking: Ranking::from_order(n, init),
        n_tilde: n,
        k0: init.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Search {
    Backtracking,
    /// Plain binary search with `⌊T / (n ln k)⌋` per test.
    Naive,
}

/// Runs the procedure and returns the estimated ordering.
pub fn asii(o: &mut Oracle, budget: u64, partial: Option<&Permutation>) -> Result<Permutation> {
    let opts = AsiiOptions {
        partial,
        ..Default::default()
    };
    Ok(asii_with(o, budget, opts)?.permutation)
}

/// Runs the procedure and returns the ordering with its per-insertion report.
pub fn asii_with(o: &mut Oracle, budget: u64, opts: AsiiOptions<'_>) -> Result<AsiiRun> {
    iterative_insertion(o, budget, opts, Search::Backtracking)
}

pub(crate) fn iterative_insertion(
    o: &mut Oracle,
    budget: u64,
    opts: AsiiOptions<'_>,
    search: Search,
) -> Result<AsiiRun> {
    let n = o.n();
    let Start {
        mut ranking,
        n_tilde,
        k0,
    } = start(n, opts.partial)?;
    let clamps_before = o.clamp_events();
    let queries_before = o.ledger().total();
    let truth = match opts.instrument {
        Instrument::Truth(t) => Some(t),
        _ => None,
    };
    let mut insertions = Vec::with_capacity(n.saturating_sub(k0));

    for k in k0..n {
        let extremes_budget = budget / (3 * n_tilde as u64);
        let before = o.ledger().total();
        let outcome = test(o, k, ranking.first(), ranking.last(), extremes_budget)?;
        let extremes_queries = o.ledger().total() - before;
        let mut record = None;
        match outcome {
            TestOutcome::Left => ranking.push_front(k),
            TestOutcome::Right => ranking.push_back(k),
            TestOutcome::Middle => {
                let before = o.ledger().total();
                let out = match search {
                    Search::Backtracking => bbs(
                        o,
                        &ranking,
                        k,
                        BbsBudget {
                            total: budget,
                            n_tilde,
                        },
                        opts.instrument,
                    )?,
                    Search::Naive => {
                        crate::baselines::naive::naive_binary_search(o, &ranking, k, budget, n)?
                    }
                };
                ranking.insert(k, out.position);
                record = Some(SearchRecord {
                    rounds: out.rounds,
                    per_test_budget: out.per_test_budget,
                    tests_run: out.tests_run,
                    queries: o.ledger().total() - before,
                    position: out.position,
                    trace: out.trace,
                });
            }
        }
        insertions.push(InsertionRecord {
            item: k,
            extremes: outcome,
            extremes_budget,
            extremes_queries,
            search: record,
            rank: ranking.rank(k).expect("just inserted"),
            coherent: truth.map(|t| ranking.to_rank_map().agrees_with(t)),
        });
    }

    Ok(AsiiRun {
        permutation: ranking.to_permutation()?,
        report: AsiiReport {
            n_tilde,
            k0,
            insertions,
            total_queries: o.ledger().total() - queries_before,
            clamp_events: o.clamp_events() - clamps_before,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SimilarityMatrix;
    use crate::oracle::NoiseModel;
    use crate::permutation::is_recovery_success;
    use crate::rng::Stream;

    fn permuted_toeplitz(n: usize, delta: f64, truth: &Permutation) -> SimilarityMatrix {
        SimilarityMatrix::from_upper(n, |i, j| {
            let d = truth.rank(i).abs_diff(truth.rank(j));
            delta * (n - d) as f64
        })
        .unwrap()
    }

    #[test]
    fn noiseless_recovers_random_orderings() {
        let mut s = Stream::new(8);
        for seed in 0..20 {
            let truth = Permutation::random(8, &mut s);
            let mut o = Oracle::new(permuted_toeplitz(8, 1.0, &truth), NoiseModel::noiseless(), seed);
            let est = asii(&mut o, 10_000, None).unwrap();
            assert!(is_recovery_success(&est, &truth).unwrap());
            assert!(est.rank(0) < est.rank(1));
            assert!(o.ledger().total() <= 10_000);
        }
    }

    #[test]
    fn online_single_insertion_extends_partial() {
        let n = 7;
        let truth = Permutation::new(vec![5, 2, 7, 1, 3, 6, 4]).unwrap();
        let partial = truth.restrict(&(0..n - 1).collect::<Vec<_>>()).to_permutation().unwrap();
        let mut o = Oracle::new(permuted_toeplitz(n, 1.0, &truth), NoiseModel::noiseless(), 0);
        let opts = AsiiOptions {
            partial: Some(&partial),
            ..Default::default()
        };
        let run = asii_with(&mut o, 1_000, opts).unwrap();
        assert_eq!(run.report.n_tilde, 1);
        assert_eq!(run.report.insertions.len(), 1);
        assert_eq!(run.permutation, truth);
    }

    #[test]
    fn tiny_instances() {
        let one = SimilarityMatrix::new(1, vec![1.0]).unwrap();
        let mut o = Oracle::new(one, NoiseModel::noiseless(), 0);
        assert_eq!(asii(&mut o, 0, None).unwrap(), Permutation::identity(1));
        let two = SimilarityMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let mut o = Oracle::new(two, NoiseModel::noiseless(), 0);
        assert_eq!(asii(&mut o, 0, None).unwrap(), Permutation::identity(2));
        assert_eq!(o.ledger().total(), 0);
    }

    #[test]
    fn short_partial_is_ignored() {
        let m = permuted_toeplitz(5, 1.0, &Permutation::identity(5));
        let partial = Permutation::new(vec![2, 1]).unwrap();
        let mut o = Oracle::new(m, NoiseModel::noiseless(), 0);
        let opts = AsiiOptions {
            partial: Some(&partial),
            ..Default::default()
        };
        let run = asii_with(&mut o, 1_000, opts).unwrap();
        assert_eq!(run.report.n_tilde, 5);
        assert_eq!(run.report.k0, 2);
        assert_eq!(run.permutation, Permutation::identity(5));
    }

    #[test]
    fn oversized_partial_rejected() {
        let m = permuted_toeplitz(3, 1.0, &Permutation::identity(3));
        let partial = Permutation::identity(4);
        let mut o = Oracle::new(m, NoiseModel::noiseless(), 0);
        assert!(asii(&mut o, 100, Some(&partial)).is_err());
    }

    #[test]
    fn tiny_budget_is_clamped_and_flagged() {
        let truth = Permutation::identity(6);
        let mut o = Oracle::new(permuted_toeplitz(6, 1.0, &truth), NoiseModel::noiseless(), 0);
        let run = asii_with(&mut o, 10, AsiiOptions::default()).unwrap();
        assert!(run.report.clamp_events > 0);
        assert!(is_recovery_success(&run.permutation, &truth).unwrap());
    }

    #[test]
    fn noiseless_prefixes_stay_coherent() {
        let mut s = Stream::new(21);
        for _ in 0..10 {
            let truth = Permutation::random(12, &mut s);
            let mut o = Oracle::new(permuted_toeplitz(12, 0.5, &truth), NoiseModel::noiseless(), 0);
            let opts = AsiiOptions {
                partial: None,
                instrument: Instrument::Truth(&truth),
            };
            let run = asii_with(&mut o, 50_000, opts).unwrap();
            assert!(run.report.insertions.iter().all(|r| r.coherent == Some(true)));
        }
    }
}
