use super::batch::BatchObservation;
use crate::matrix::SimilarityMatrix;
use crate::permutation::Permutation;

/// Which coordinates are dropped when two rows of `Y` are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExclusionRule {
    /// Drop both `j` and the previous pick from both rows, so coordinates align.
    #[default]
    Both,
    /// Drop each row's own diagonal and compare the remaining `n - 1` entries
    /// position by position.
    Own,
}

/// Greedy nearest-row chain started at the item with the smallest row sum.
pub fn adaptive_sorting(y: &BatchObservation) -> Permutation {
    adaptive_sorting_with(&y.y, ExclusionRule::Both)
}

pub fn adaptive_sorting_with(y: &SimilarityMatrix, rule: ExclusionRule) -> Permutation {
    let n = y.n();
    if n < 2 {
        return Permutation::identity(n);
    }
    let scores: Vec<f64> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).map(|j| y.get(i, j)).sum())
        .collect();
    let mut used = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut prev = argmin((0..n).map(|i| (i, scores[i])));
    used[prev] = true;
    order.push(prev);
    while order.len() < n {
        let next = argmin(
            (0..n)
                .filter(|&j| !used[j])
                .map(|j| (j, row_distance(y, prev, j, rule))),
        );
        used[next] = true;
        order.push(next);
        prev = next;
    }
    Permutation::from_order(&order)
        .expect("chain visits every item once")
        .canonical()
}

fn row_distance(y: &SimilarityMatrix, a: usize, b: usize, rule: ExclusionRule) -> f64 {
    let n = y.n();
    match rule {
        ExclusionRule::Both => (0..n)
            .filter(|&c| c != a && c != b)
            .map(|c| (y.get(a, c) - y.get(b, c)).abs())
            .sum(),
        ExclusionRule::Own => {
            let ra = (0..n).filter(|&c| c != a).map(|c| y.get(a, c));
            let rb = (0..n).filter(|&c| c != b).map(|c| y.get(b, c));
            ra.zip(rb).map(|(u, v)| (u - v).abs()).sum()
        }
    }
}

// lowest index wins ties
fn argmin(it: impl Iterator<Item = (usize, f64)>) -> usize {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in it {
        if best.is_none_or(|(_, b)| v < b) {
            best = Some((i, v));
        }
    }
    best.expect("non-empty candidate set").0
}
