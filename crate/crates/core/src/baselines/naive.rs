use crate::asii::{self, AsiiOptions, BbsOutcome, Ranking, TestOutcome, TriadTest};
use crate::error::Result;
use crate::oracle::Oracle;
use crate::permutation::Permutation;

/// Iterative insertion with a plain binary search in place of the
/// backtracking search.
pub fn naive_insertion(
    o: &mut Oracle,
    budget: u64,
    partial: Option<&Permutation>,
) -> Result<Permutation> {
    let opts = AsiiOptions {
        partial,
        ..Default::default()
    };
    Ok(asii::iterative_insertion(o, budget, opts, asii::Search::Naive)?.permutation)
}

/// Raw per-test share `⌊T / (n ln k)⌋` for a ranking about to reach `size` items.
pub fn naive_test_budget(budget: u64, n: usize, size: usize) -> u64 {
    (budget as f64 / (n as f64 * (size as f64).ln())).floor() as u64
}

/// Halves the rank interval `(first, last)` until it has width one; every
/// test result is trusted.
pub(crate) fn naive_binary_search(
    o: &mut Oracle,
    ranking: &Ranking,
    k: usize,
    budget: u64,
    n: usize,
) -> Result<BbsOutcome> {
    let size = ranking.len() + 1;
    let mut per_test = naive_test_budget(budget, n, size);
    if per_test < 3 {
        o.note_clamp();
        per_test = 3;
    }
    let (mut l, mut r) = (ranking.first(), ranking.last());
    let rank = |item| ranking.rank(item).expect("ranked");
    let mut tests_run = 0;
    while rank(r) - rank(l) > 1 {
        let m = ranking.item_at((rank(l) + rank(r)) / 2);
        tests_run += 1;
        if o.test(k, l, m, per_test)? == TestOutcome::Middle {
            r = m;
        } else {
            l = m;
        }
    }
    Ok(BbsOutcome {
        position: rank(l) + 1,
        rounds: tests_run,
        per_test_budget: per_test,
        tests_run,
        trace: None,
    })
}
