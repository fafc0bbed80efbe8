//! Orderings of items.
//!
//! Items are stored 0-based (`0..n`), ranks are 1-based (`1..=n`) as in the
//! usual seriation notation: `rank(i)` is the position of item `i` in the
//! ordering. A [`Permutation`] ranks every item; a [`RankMap`] ranks a
//! subset.

use crate::error::{Result, SeriationError};
use crate::rng::Stream;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    pos: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its rank vector (`pos[i]` is the 1-based rank of item `i`).
    pub fn new(pos: Vec<usize>) -> Result<Self> {
        let n = pos.len();
        if n == 0 {
            return Err(SeriationError::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        for &p in &pos {
            if p == 0 || p > n || seen[p - 1] {
                return Err(SeriationError::InvalidPermutation(format!(
                    "{pos:?} is not a bijection onto 1..={n}"
                )));
            }
            seen[p - 1] = true;
        }
        Ok(Self { pos })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            pos: (1..=n).collect(),
        }
    }

    /// Builds a permutation from the item sequence read left to right:
    /// `order[r]` is the item holding rank `r + 1`.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut pos = vec![0; n];
        for (r, &item) in order.iter().enumerate() {
            if item >= n {
                return Err(SeriationError::ItemOutOfRange { item, n });
            }
            pos[item] = r + 1;
        }
        Self::new(pos)
    }

    /// Uniformly random permutation drawn by Fisher–Yates.
    pub fn random(n: usize, stream: &mut Stream) -> Self {
        let mut pos: Vec<usize> = (1..=n).collect();
        stream.shuffle(&mut pos);
        Self { pos }
    }

    pub fn len(&self) -> usize {
        self.pos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty()
    }

    /// 1-based rank of `item`.
    pub fn rank(&self, item: usize) -> usize {
        self.pos[item]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.pos
    }

    /// Items listed by increasing rank.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.pos.len()];
        for (item, &p) in self.pos.iter().enumerate() {
            order[p - 1] = item;
        }
        order
    }

    /// `rev.rank(i) = n + 1 - rank(i)`.
    pub fn reverse(&self) -> Self {
        let n = self.pos.len();
        Self {
            pos: self.pos.iter().map(|&p| n + 1 - p).collect(),
        }
    }

    /// Group inverse: `inv.rank(rank(i) - 1) = i + 1`.
    pub fn inverse(&self) -> Self {
        let mut pos = vec![0; self.pos.len()];
        for (item, &p) in self.pos.iter().enumerate() {
            pos[p - 1] = item + 1;
        }
        Self { pos }
    }

    /// Orientation with item 0 ranked before item 1 (a no-op for `n < 2`).
    pub fn canonical(self) -> Self {
        if self.pos.len() >= 2 && self.pos[0] > self.pos[1] {
            self.reverse()
        } else {
            self
        }
    }

    /// The ordering induced on `items` (ranks renumbered `1..=|items|`).
    pub fn restrict(&self, items: &[usize]) -> RankMap {
        let mut order = items.to_vec();
        order.sort_by_key(|&i| self.pos[i]);
        RankMap { order }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.pos.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Success criterion: the estimate equals the truth or its reversal.
pub fn is_recovery_success(estimate: &Permutation, truth: &Permutation) -> Result<bool> {
    if estimate.len() != truth.len() {
        return Err(SeriationError::DimensionMismatch {
            expected: truth.len(),
            got: estimate.len(),
        });
    }
    if estimate == truth {
        return Ok(true);
    }
    let n = truth.len();
    Ok(estimate
        .pos
        .iter()
        .zip(&truth.pos)
        .all(|(&e, &t)| e == n + 1 - t))
}

/// Ranking of a subset `S` of items onto `1..=|S|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankMap {
    order: Vec<usize>,
}

impl RankMap {
    /// `order[r]` is the item holding rank `r + 1`; items must be distinct.
    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(SeriationError::InvalidPermutation(format!(
                "duplicate item in {order:?}"
            )));
        }
        Ok(Self { order })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Kept items in increasing index order.
    pub fn items(&self) -> Vec<usize> {
        let mut items = self.order.clone();
        items.sort_unstable();
        items
    }

    pub fn rank(&self, item: usize) -> Option<usize> {
        self.order.iter().position(|&i| i == item).map(|r| r + 1)
    }

    pub fn contains(&self, item: usize) -> bool {
        self.order.contains(&item)
    }

    /// Whether this ordering matches `truth` restricted to the same items,
    /// in either orientation.
    pub fn agrees_with(&self, truth: &Permutation) -> bool {
        let ranks: Vec<usize> = self.order.iter().map(|&i| truth.rank(i)).collect();
        ranks.windows(2).all(|w| w[0] < w[1]) || ranks.windows(2).all(|w| w[0] > w[1])
    }

    /// Converts to a full permutation when the subset is `0..len`.
    pub fn to_permutation(&self) -> Result<Permutation> {
        Permutation::from_order(&self.order)
    }
}
