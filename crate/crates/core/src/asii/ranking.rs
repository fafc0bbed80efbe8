use crate::error::{Result, SeriationError};
use crate::permutation::{Permutation, RankMap};

/// Growing ordering of a subset of `0..n`, with O(1) rank and item lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    order: Vec<usize>,
    // 1-based rank per item, 0 when absent
    rank: Vec<usize>,
}

impl Ranking {
    pub fn empty(n: usize) -> Self {
        Self {
            order: Vec::with_capacity(n),
            rank: vec![0; n],
        }
    }

    /// Ranking over `0..order.len()` read left to right, inside a universe of `n` items.
    pub fn from_order(n: usize, order: &[usize]) -> Self {
        let mut r = Self::empty(n);
        for &item in order {
            r.push_back(item);
        }
        r
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

    pub fn rank(&self, item: usize) -> Option<usize> {
        match self.rank[item] {
            0 => None,
            r => Some(r),
        }
    }

    /// Item holding 1-based rank `r`.
    pub fn item_at(&self, r: usize) -> usize {
        self.order[r - 1]
    }

    pub fn first(&self) -> usize {
        self.order[0]
    }

    pub fn last(&self) -> usize {
        self.order[self.order.len() - 1]
    }

    /// Places `item` at 1-based rank `position`; items at or after it move up one.
    pub fn insert(&mut self, item: usize, position: usize) {
        debug_assert_eq!(self.rank[item], 0, "item {item} already ranked");
        debug_assert!((1..=self.order.len() + 1).contains(&position));
        self.order.insert(position - 1, item);
        for (idx, &it) in self.order.iter().enumerate().skip(position - 1) {
            self.rank[it] = idx + 1;
        }
    }

    pub fn push_front(&mut self, item: usize) {
        self.insert(item, 1);
    }

    pub fn push_back(&mut self, item: usize) {
        self.insert(item, self.order.len() + 1);
    }

    pub fn to_rank_map(&self) -> RankMap {
        RankMap::from_order(self.order.clone()).expect("ranking holds distinct items")
    }

    /// Full permutation; fails unless every item of the universe is ranked.
    pub fn to_permutation(&self) -> Result<Permutation> {
        if self.order.len() != self.rank.len() {
            return Err(SeriationError::InvalidPermutation(format!(
                "{} of {} items ranked",
                self.order.len(),
                self.rank.len()
            )));
        }
        Permutation::from_order(&self.order)
    }
}
