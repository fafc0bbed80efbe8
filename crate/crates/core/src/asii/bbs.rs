//! Binary & backtracking search.
//!
//! A noisy binary search over the current ranking that keeps every
//! interval it has descended into on a stack. Each round first re-tests the
//! active interval (once the stack holds at least two entries); a failed
//! check pops it, otherwise the search descends one level or, on an
//! interval of width one, pushes the same interval again. After
//! `T_k = 3⌈log₂ k⌉` rounds the item is placed right after the left end of
//! the active interval.

use super::ranking::Ranking;
use super::test::{TestOutcome, TriadTest};
use crate::error::{Result, SeriationError};
use crate::permutation::Permutation;

/// `⌈log₂ k⌉` for `k >= 1`.
pub fn ceil_log2(k: usize) -> u32 {
    assert!(k >= 1);
    usize::BITS - (k - 1).leading_zeros()
}

/// Budget shared by the searches of one run: the total `T` and the number
/// `ñ` of items to insert.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BbsBudget {
    pub total: u64,
    pub n_tilde: usize,
}

impl BbsBudget {
    /// `T_k` for a ranking that will hold `size` items after insertion.
    pub fn rounds(size: usize) -> usize {
        3 * ceil_log2(size) as usize
    }

    /// `⌊T / (3 ñ T_k)⌋`.
    pub fn per_test(&self, size: usize) -> u64 {
        self.total / (3 * self.n_tilde as u64 * Self::rounds(size) as u64)
    }
}

/// Stack `L_t` of nested search intervals, stored as item pairs `(l, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalStack {
    entries: Vec<(usize, usize)>,
}

impl IntervalStack {
    pub fn new(l0: usize, r0: usize) -> Self {
        Self {
            entries: vec![(l0, r0)],
        }
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn active(&self) -> (usize, usize) {
        self.entries[self.entries.len() - 1]
    }

    /// `|L_t|`: the index of the last entry.
    pub fn depth(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn push(&mut self, interval: (usize, usize)) {
        self.entries.push(interval);
    }

    /// Removes the active interval; the root interval is never removed.
    pub fn pop(&mut self) {
        if self.entries.len() > 1 {
            self.entries.pop();
        }
    }

    /// Each entry's rank interval lies inside its predecessor's.
    pub fn is_nested(&self, ranking: &Ranking) -> bool {
        let ranks = |(l, r): (usize, usize)| (ranking.rank(l), ranking.rank(r));
        self.entries.windows(2).all(|w| match (ranks(w[0]), ranks(w[1])) {
            ((Some(a), Some(b)), (Some(c), Some(d))) => a <= c && d <= b && c < d,
            _ => false,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BbsAction {
    Backtrack,
    DescendLeft,
    DescendRight,
    Hold,
}

/// One state of the search. Step 0 is the initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BbsStep {
    pub t: usize,
    pub action: Option<BbsAction>,
    /// `|L_t|`
    pub depth: usize,
    /// `w_t`, the index of the last interval that truly contains the item.
    /// Only available when the truth is supplied and `L_t[0]` contains it.
    pub last_good: Option<usize>,
    /// `N_t = |L_t| + ⌈log₂ k⌉ - 2 w_t`
    pub potential: Option<i64>,
    pub nested: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BbsTrace {
    pub log2_k: u32,
    pub steps: Vec<BbsStep>,
}

impl BbsTrace {
    fn potentials(&self) -> Option<Vec<i64>> {
        self.steps.iter().map(|s| s.potential).collect()
    }

    /// `N_t <= N_{t-1} + 1` at every step; `None` without truth.
    pub fn potential_step_bound_holds(&self) -> Option<bool> {
        let p = self.potentials()?;
        Some(p.windows(2).all(|w| w[1] <= w[0] + 1))
    }

    /// `N_t <= N_{t-1} - 1` at every step; `None` without truth.
    pub fn potential_strictly_decreases(&self) -> Option<bool> {
        let p = self.potentials()?;
        Some(p.windows(2).all(|w| w[1] < w[0]))
    }

    /// Final `w_{T_k} >= ⌈log₂ k⌉`, which certifies the returned position.
    pub fn success_certified(&self) -> Option<bool> {
        let w = self.steps.last()?.last_good?;
        Some(w >= self.log2_k as usize)
    }

    pub fn always_nested(&self) -> bool {
        self.steps.iter().all(|s| s.nested)
    }

    pub fn backtracks(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.action == Some(BbsAction::Backtrack))
            .count()
    }
}

/// Trace recording level.
#[derive(Debug, Clone, Copy, Default)]
pub enum Instrument<'a> {
    #[default]
    Off,
    /// Record actions, depths and nesting.
    Trace,
    /// Additionally compute `w_t` and `N_t` against the latent ordering.
    Truth(&'a Permutation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BbsOutcome {
    /// 1-based rank the item takes, in `2..=len`.
    pub position: usize,
    pub rounds: usize,
    pub per_test_budget: u64,
    pub tests_run: usize,
    pub trace: Option<BbsTrace>,
}

/// Searches `ranking` (at least two items) for the position of item `k`.
pub fn bbs<T: TriadTest + ?Sized>(
    tests: &mut T,
    ranking: &Ranking,
    k: usize,
    budget: BbsBudget,
    instrument: Instrument<'_>,
) -> Result<BbsOutcome> {
    if ranking.len() < 2 {
        return Err(SeriationError::Config(
            "binary search needs at least two ranked items".into(),
        ));
    }
    if ranking.rank(k).is_some() {
        return Err(SeriationError::Config(format!("item {k} is already ranked")));
    }
    let size = ranking.len() + 1;
    let rounds = BbsBudget::rounds(size);
    let per_test = budget.per_test(size);
    let log2_k = ceil_log2(size);

    let mut stack = IntervalStack::new(ranking.first(), ranking.last());
    let mut tests_run = 0;
    let mut trace = match instrument {
        Instrument::Off => None,
        _ => Some(BbsTrace {
            log2_k,
            steps: Vec::with_capacity(rounds + 1),
        }),
    };
    let record = |trace: &mut Option<BbsTrace>, t, action, stack: &IntervalStack| {
        if let Some(tr) = trace.as_mut() {
            tr.steps.push(observe(t, action, stack, ranking, k, log2_k, instrument));
        }
    };
    record(&mut trace, 0, None, &stack);

    for t in 1..=rounds {
        let (l, r) = stack.active();
        if stack.depth() >= 1 {
            tests_run += 1;
            if tests.test(k, l, r, per_test)? != TestOutcome::Middle {
                stack.pop();
                record(&mut trace, t, Some(BbsAction::Backtrack), &stack);
                continue;
            }
        }
        let (rl, rr) = (rank_of(ranking, l), rank_of(ranking, r));
        let action = if rr - rl <= 1 {
            stack.push((l, r));
            BbsAction::Hold
        } else {
            let m = ranking.item_at((rl + rr) / 2);
            tests_run += 1;
            if tests.test(k, l, m, per_test)? == TestOutcome::Middle {
                stack.push((l, m));
                BbsAction::DescendLeft
            } else {
                stack.push((m, r));
                BbsAction::DescendRight
            }
        };
        record(&mut trace, t, Some(action), &stack);
    }

    Ok(BbsOutcome {
        position: rank_of(ranking, stack.active().0) + 1,
        rounds,
        per_test_budget: per_test,
        tests_run,
        trace,
    })
}

fn rank_of(ranking: &Ranking, item: usize) -> usize {
    ranking.rank(item).expect("search intervals hold ranked items")
}

fn observe(
    t: usize,
    action: Option<BbsAction>,
    stack: &IntervalStack,
    ranking: &Ranking,
    k: usize,
    log2_k: u32,
    instrument: Instrument<'_>,
) -> BbsStep {
    let depth = stack.depth();
    let last_good = match instrument {
        Instrument::Truth(truth) => {
            let good = |&(l, r): &(usize, usize)| {
                let (a, b) = (truth.rank(l), truth.rank(r));
                let pk = truth.rank(k);
                a.min(b) < pk && pk < a.max(b)
            };
            let entries = stack.entries();
            if good(&entries[0]) {
                entries.iter().rposition(good)
            } else {
                None
            }
        }
        _ => None,
    };
    BbsStep {
        t,
        action,
        depth,
        last_good,
        potential: last_good.map(|w| depth as i64 + log2_k as i64 - 2 * w as i64),
        nested: stack.is_nested(ranking),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SimilarityMatrix;
    use crate::oracle::{NoiseModel, Oracle};
    use crate::rng::Stream;

    /// Answers every test correctly from the latent ordering, optionally
    /// lying on chosen call indices.
    struct Scripted<'a> {
        truth: &'a Permutation,
        lie_on: Vec<usize>,
        calls: usize,
    }

    impl TriadTest for Scripted<'_> {
        fn test(&mut self, k: usize, l: usize, r: usize, _t0: u64) -> Result<TestOutcome> {
            let (pk, pl, pr) = (self.truth.rank(k), self.truth.rank(l), self.truth.rank(r));
            let inside = pl.min(pr) < pk && pk < pl.max(pr);
            let lie = self.lie_on.contains(&self.calls);
            self.calls += 1;
            Ok(if inside != lie {
                TestOutcome::Middle
            } else {
                TestOutcome::Left
            })
        }
    }

    #[test]
    fn ceil_log2_values() {
        let got: Vec<u32> = (1..=9).map(ceil_log2).collect();
        assert_eq!(got, vec![0, 1, 2, 2, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn per_test_budget() {
        let b = BbsBudget {
            total: 10_000,
            n_tilde: 10,
        };
        assert_eq!(BbsBudget::rounds(10), 12);
        assert_eq!(b.per_test(10), 10_000 / 360);
    }

    #[test]
    fn stack_never_pops_root() {
        let mut s = IntervalStack::new(0, 5);
        s.pop();
        assert_eq!(s.entries(), &[(0, 5)]);
        assert_eq!(s.depth(), 0);
    }

    fn truth_ranking(truth: &Permutation, k: usize) -> Ranking {
        let order: Vec<usize> = truth.order().into_iter().filter(|&i| i != k).collect();
        Ranking::from_order(truth.len(), &order)
    }

    #[test]
    fn correct_tests_decrease_potential_every_step() {
        let mut s = Stream::new(4);
        for n in 4..=20 {
            for _ in 0..10 {
                let truth = Permutation::random(n, &mut s);
                // an item strictly inside
                let k = truth.order()[1 + s.below(n as u64 - 2) as usize];
                let ranking = truth_ranking(&truth, k);
                let mut scripted = Scripted { truth: &truth, lie_on: vec![], calls: 0 };
                let budget = BbsBudget { total: 1, n_tilde: 1 };
                let out = bbs(&mut scripted, &ranking, k, budget, Instrument::Truth(&truth)).unwrap();
                let trace = out.trace.unwrap();
                assert_eq!(trace.potential_strictly_decreases(), Some(true));
                assert_eq!(trace.backtracks(), 0);
                assert_eq!(out.position, truth.rank(k));
                assert_eq!(trace.success_certified(), Some(true));
            }
        }
    }

    #[test]
    fn one_wrong_descent_is_undone() {
        let truth = Permutation::identity(17);
        let k = 3;
        let ranking = truth_ranking(&truth, k);
        // call 0 is the first midpoint test (no sanity check on the root)
        let mut scripted = Scripted { truth: &truth, lie_on: vec![0], calls: 0 };
        let budget = BbsBudget { total: 1, n_tilde: 1 };
        let out = bbs(&mut scripted, &ranking, k, budget, Instrument::Truth(&truth)).unwrap();
        let trace = out.trace.unwrap();
        assert!(trace.backtracks() >= 1);
        assert_eq!(out.position, truth.rank(k));
        assert_eq!(trace.potential_step_bound_holds(), Some(true));
        assert!(trace.always_nested());
    }

    #[test]
    fn noiseless_oracle_finds_true_slot() {
        let n = 8;
        let r = SimilarityMatrix::from_upper(n, |i, j| (n - (j - i)) as f64).unwrap();
        for k in 1..n - 1 {
            let mut o = Oracle::new(r.clone(), NoiseModel::noiseless(), 0);
            let truth = Permutation::identity(n);
            let ranking = truth_ranking(&truth, k);
            let budget = BbsBudget { total: 100_000, n_tilde: n };
            let out = bbs(&mut o, &ranking, k, budget, Instrument::Trace).unwrap();
            assert_eq!(out.position, k + 1);
            assert_eq!(out.trace.unwrap().backtracks(), 0);
            let per_pair = out.per_test_budget / 3;
            assert_eq!(o.ledger().total(), out.tests_run as u64 * 3 * per_pair);
        }
    }

    #[test]
    fn two_item_ranking_only_holds() {
        let truth = Permutation::identity(3);
        let ranking = truth_ranking(&truth, 1);
        let mut scripted = Scripted { truth: &truth, lie_on: vec![], calls: 0 };
        let budget = BbsBudget { total: 1, n_tilde: 1 };
        let out = bbs(&mut scripted, &ranking, 1, budget, Instrument::Trace).unwrap();
        let trace = out.trace.unwrap();
        assert!(trace.steps[1..].iter().all(|s| s.action == Some(BbsAction::Hold)));
        assert_eq!(out.position, 2);
        // sanity checks from round 2 onwards only
        assert_eq!(out.tests_run, out.rounds - 1);
    }

    #[test]
    fn rejects_small_or_inconsistent_input() {
        let truth = Permutation::identity(3);
        let mut scripted = Scripted { truth: &truth, lie_on: vec![], calls: 0 };
        let budget = BbsBudget { total: 1, n_tilde: 1 };
        let one = Ranking::from_order(3, &[0]);
        assert!(bbs(&mut scripted, &one, 1, budget, Instrument::Off).is_err());
        let two = Ranking::from_order(3, &[0, 1]);
        assert!(bbs(&mut scripted, &two, 1, budget, Instrument::Off).is_err());
    }
}
