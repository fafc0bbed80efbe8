//! Insertion with a separation tolerance.
//!
//! Each comparison must clear a margin of `Δ̃/2` or it returns
//! [`MarginTestOutcome::Null`]. Items whose placement cannot be confirmed
//! at that resolution are discarded, so the output ranks only a subset.

use crate::asii::{self, bbs, sample_triad, BbsBudget, Instrument, TriadMeans};
use crate::brute::brute_force_seriate;
use crate::error::{Result, SeriationError};
use crate::matrix::SimilarityMatrix;
use crate::oracle::Oracle;
use crate::permutation::{Permutation, RankMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarginTestOutcome {
    Left,
    Middle,
    Right,
    Null,
}

impl MarginTestOutcome {
    /// Checks `I[(l,r),k]`, `I[(k,r),l]`, `I[(k,l),r]` in that order, where
    /// `I[(a,b),x]` holds when `M̂_ab + Δ̃/2 < min(M̂_xa, M̂_xb)`.
    pub fn decide(means: &TriadMeans, delta_tilde: f64) -> Self {
        let half = delta_tilde / 2.0;
        let TriadMeans { lr, kl, kr } = *means;
        if lr + half < kl.min(kr) {
            Self::Middle
        } else if kr + half < kl.min(lr) {
            Self::Left
        } else if kl + half < kr.min(lr) {
            Self::Right
        } else {
            Self::Null
        }
    }
}

pub fn test_margin(
    o: &mut Oracle,
    k: usize,
    l: usize,
    r: usize,
    t0: u64,
    delta_tilde: f64,
) -> Result<MarginTestOutcome> {
    check_tolerance(delta_tilde)?;
    Ok(MarginTestOutcome::decide(
        &sample_triad(o, k, l, r, t0)?,
        delta_tilde,
    ))
}

fn check_tolerance(delta_tilde: f64) -> Result<()> {
    if delta_tilde > 0.0 && delta_tilde.is_finite() {
        Ok(())
    } else {
        Err(SeriationError::Config(format!(
            "tolerance must be positive, got {delta_tilde}"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiscardReason {
    FirstTestNull,
    ValidationFailed,
}

impl DiscardReason {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::FirstTestNull => "first-test-null",
            Self::ValidationFailed => "validation-failed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Discard {
    pub item: usize,
    /// Number of ranked items when the item was considered.
    pub kept_before: usize,
    pub reason: DiscardReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionResult {
    pub kept: RankMap,
    pub discarded: Vec<Discard>,
    pub initial: Vec<usize>,
}

impl ExtensionResult {
    pub fn discarded_items(&self) -> Vec<usize> {
        self.discarded.iter().map(|d| d.item).collect()
    }
}

pub fn asii_extension(
    o: &mut Oracle,
    budget: u64,
    delta_tilde: f64,
    partial: Option<&Permutation>,
) -> Result<ExtensionResult> {
    check_tolerance(delta_tilde)?;
    let n = o.n();
    let asii::Start {
        mut ranking,
        n_tilde,
        k0,
    } = asii::start(n, partial)?;
    let initial = ranking.order().to_vec();
    let mut discarded = Vec::new();
    let margin_budget = if n_tilde == 0 { 0 } else { budget / (4 * n_tilde as u64) };

    for k in k0..n {
        let kept_before = ranking.len();
        let discard = |reason| Discard {
            item: k,
            kept_before,
            reason,
        };
        let first = test_margin(o, k, ranking.first(), ranking.last(), margin_budget, delta_tilde)?;
        match first {
            MarginTestOutcome::Null => discarded.push(discard(DiscardReason::FirstTestNull)),
            MarginTestOutcome::Left => ranking.push_front(k),
            MarginTestOutcome::Right => ranking.push_back(k),
            MarginTestOutcome::Middle => {
                let out = bbs(
                    o,
                    &ranking,
                    k,
                    BbsBudget {
                        total: budget,
                        n_tilde,
                    },
                    Instrument::Off,
                )?;
                let m = out.position;
                if m < 2 || m > ranking.len() {
                    // no adjacent pair to validate against
                    discarded.push(discard(DiscardReason::ValidationFailed));
                    continue;
                }
                let (l, r) = (ranking.item_at(m - 1), ranking.item_at(m));
                match test_margin(o, k, l, r, margin_budget, delta_tilde)? {
                    MarginTestOutcome::Middle => ranking.insert(k, m),
                    _ => discarded.push(discard(DiscardReason::ValidationFailed)),
                }
            }
        }
    }

    Ok(ExtensionResult {
        kept: ranking.to_rank_map(),
        discarded,
        initial,
    })
}

/// Largest number of items [`verify_delta_maximal`] accepts in the subset.
pub const MAX_VERIFY_SUBSET: usize = 10;
/// Largest matrix [`verify_delta_maximal`] accepts.
pub const MAX_VERIFY_N: usize = 12;

/// `M_S` is pre-R with minimal gap at least `delta`.
pub fn in_class(m: &SimilarityMatrix, items: &[usize], delta: f64) -> Result<bool> {
    let sub = m.submatrix(items)?;
    Ok(match brute_force_seriate(&sub)? {
        Some(order) => sub.reorder(&order)?.minimal_gap().at_least(delta),
        None => false,
    })
}

/// `S` is `delta`-maximal: `M_S` is in the class and no single addition keeps it there.
pub fn verify_delta_maximal(m: &SimilarityMatrix, s: &[usize], delta: f64) -> Result<bool> {
    if m.n() > MAX_VERIFY_N {
        return Err(SeriationError::TooLarge {
            n: m.n(),
            limit: MAX_VERIFY_N,
        });
    }
    if s.len() > MAX_VERIFY_SUBSET {
        return Err(SeriationError::TooLarge {
            n: s.len(),
            limit: MAX_VERIFY_SUBSET,
        });
    }
    if !in_class(m, s, delta)? {
        return Ok(false);
    }
    for k in (0..m.n()).filter(|k| !s.contains(k)) {
        if s.len() + 1 > crate::brute::MAX_BRUTE_FORCE_N {
            return Err(SeriationError::TooLarge {
                n: s.len() + 1,
                limit: crate::brute::MAX_BRUTE_FORCE_N,
            });
        }
        let mut grown = s.to_vec();
        grown.push(k);
        if in_class(m, &grown, delta)? {
            return Ok(false);
        }
    }
    Ok(true)
}
