//! Exhaustive seriation for small instances, used as ground truth.

use std::cmp::Ordering;

use crate::error::{Result, SeriationError};
use crate::matrix::SimilarityMatrix;
use crate::permutation::Permutation;

/// Largest `n` accepted by [`brute_force_seriate`].
pub const MAX_BRUTE_FORCE_N: usize = 10;

/// Finds an ordering that makes `m` strictly Robinson, or `None` if no
/// such ordering exists.
///
/// Orderings are enumerated depth-first with every Robinson inequality
/// checked as soon as its largest index is placed, so the search visits
/// every permutation that could still succeed and no other. Only
/// orderings ranking item 0 before item 1 are enumerated; the returned
/// permutation is therefore canonical.
pub fn brute_force_seriate(m: &SimilarityMatrix) -> Result<Option<Permutation>> {
    let n = m.n();
    if n > MAX_BRUTE_FORCE_N {
        return Err(SeriationError::TooLarge {
            n,
            limit: MAX_BRUTE_FORCE_N,
        });
    }
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(m, &mut order, &mut used) {
        Ok(Some(Permutation::from_order(&order)?))
    } else {
        Ok(None)
    }
}

fn extend(m: &SimilarityMatrix, order: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let n = m.n();
    if order.len() == n {
        return true;
    }
    for item in 0..n {
        if used[item] || (item == 1 && !used[0]) {
            continue;
        }
        order.push(item);
        if placement_ok(m, order) {
            used[item] = true;
            if extend(m, order, used) {
                return true;
            }
            used[item] = false;
        }
        order.pop();
    }
    false
}

/// Checks the inequalities whose largest index is the last placed position.
fn placement_ok(m: &SimilarityMatrix, order: &[usize]) -> bool {
    let p = order.len() - 1;
    let a = |x: usize, y: usize| m.get(order[x], order[y]);
    for i in 1..=p {
        if a(i, p).partial_cmp(&a(i - 1, p)) != Some(Ordering::Greater) {
            return false;
        }
    }
    if p >= 1 {
        for i in 0..p {
            if a(i, p - 1).partial_cmp(&a(i, p)) != Some(Ordering::Greater) {
                return false;
            }
        }
    }
    true
}
