//! Controlled aliasing: value substitution during enumeration, four-lane
//! canonical memoization, compensatory sum correction, and lane-expanded
//! witness lookup.
//!
//! An alias pair `(x0, x1)` in one half makes the enumerator charge `x0`'s
//! value whenever `x1`'s bit is set. Distinct subsets then collapse onto
//! shared sums, shrinking the state space to at most `3/4 * 2^k`, while the
//! lane index — which of the pair a subset contains — keeps enough identity
//! to undo the substitution at merge time:
//!
//!   lane 0: neither element        lane 1: x0 only
//!   lane 2: x1 only                lane 3: both
//!
//! Lanes 2 and 3 are exactly the states whose stored sum used `x0` in place
//! of `x1`, so their true sum is `sum - x0 + x1`.

use crate::enumerator::CertificateTable;
use crate::error::{Error, Result};
use crate::mask::IndexMask;
use crate::solver::SplitInstance;

/// A designated pair of distinct elements within one half: local indices
/// `i0`, `i1` with values `x0`, `x1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AliasPair {
    pub i0: usize,
    pub i1: usize,
    pub x0: u64,
    pub x1: u64,
}

impl AliasPair {
    pub fn new(i0: usize, i1: usize, x0: u64, x1: u64) -> Result<Self> {
        if i0 == i1 {
            return Err(Error::InvalidSpec("alias pair indices must differ".into()));
        }
        if x0 == x1 {
            return Err(Error::InvalidSpec("alias pair values must differ".into()));
        }
        Ok(AliasPair { i0, i1, x0, x1 })
    }
}

/// Per-half alias configuration; a half without a pair runs plain
/// single-lane enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AliasConfig {
    pub left: Option<AliasPair>,
    pub right: Option<AliasPair>,
}

impl AliasConfig {
    pub fn none() -> Self {
        AliasConfig::default()
    }

    pub fn for_half(&self, split: u8) -> Option<&AliasPair> {
        match split {
            0 => self.left.as_ref(),
            _ => self.right.as_ref(),
        }
    }
}

/// Lane index of a mask: `2 * bit(i1) + bit(i0)`.
#[inline]
pub fn alias_state(mask_bits: u64, pair: &AliasPair) -> u8 {
    let b0 = (mask_bits >> pair.i0) & 1;
    let b1 = (mask_bits >> pair.i1) & 1;
    (2 * b1 + b0) as u8
}

/// Lane index for an [`IndexMask`].
pub fn alias_state_of(mask: IndexMask, pair: &AliasPair) -> u8 {
    alias_state(mask.bits(), pair)
}

/// Subset sum with `x1`'s value replaced by `x0`'s whenever `x1`'s bit is
/// set. With no pair this is the plain subset sum.
pub fn aliased_subset_sum(values: &[u64], mask_bits: u64, pair: Option<&AliasPair>) -> u64 {
    let mut rest = mask_bits;
    let mut sum = 0u64;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        sum += match pair {
            Some(p) if i == p.i1 => p.x0,
            _ => values[i],
        };
        rest &= rest - 1;
    }
    sum
}

/// True sum of a stored aliased entry: lanes 2 and 3 undo the substitution.
#[inline]
pub fn corrected_sum(sum: u64, lane: u8, pair: &AliasPair) -> u64 {
    debug_assert!(lane < 4);
    if lane >= 2 {
        // The aliased sum charged x0 for x1's bit, so it is at least x0.
        debug_assert!(sum >= pair.x0);
        sum - pair.x0 + pair.x1
    } else {
        sum
    }
}

/// Inverse of [`corrected_sum`]: the table key under which a true sum would
/// be stored in `lane`. `None` means no u64 key exists — a clean miss.
#[inline]
pub fn aliased_value(real_sum: u64, lane: u8, pair: &AliasPair) -> Option<u64> {
    debug_assert!(lane < 4);
    if lane >= 2 {
        (real_sum + pair.x0).checked_sub(pair.x1)
    } else {
        Some(real_sum)
    }
}

/// Policy for picking alias pairs out of a split.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AliasPolicy {
    /// The two lowest-indexed elements with distinct values.
    #[default]
    LowestIndex,
    /// The two largest values (lowest index breaks ties).
    LargestValues,
}

fn choose_pair(values: &[u64], policy: AliasPolicy) -> Option<AliasPair> {
    match policy {
        AliasPolicy::LowestIndex => {
            let i0 = 0.min(values.len().checked_sub(1)?);
            let x0 = *values.first()?;
            let i1 = values.iter().position(|&v| v != x0)?;
            AliasPair::new(i0, i1, x0, values[i1]).ok()
        }
        AliasPolicy::LargestValues => {
            let mut order: Vec<usize> = (0..values.len()).collect();
            order.sort_by_key(|&i| (std::cmp::Reverse(values[i]), i));
            let i0 = *order.first()?;
            let i1 = *order.iter().find(|&&i| values[i] != values[i0])?;
            AliasPair::new(i0, i1, values[i0], values[i1]).ok()
        }
    }
}

/// Picks at most one alias pair per half; halves with fewer than two
/// distinct values get none.
pub fn choose_alias_pairs(split: &SplitInstance, policy: AliasPolicy) -> AliasConfig {
    AliasConfig {
        left: choose_pair(&split.left, policy),
        right: choose_pair(&split.right, policy),
    }
}

/// Lane-aware insertion: stores `mask` in its lane iff the lane is empty or
/// the mask is lex-smaller than the incumbent. Lanes never compete with one
/// another. The sum must be the aliased subset sum of `mask`.
pub fn insert_lane(
    table: &mut CertificateTable,
    sum: u64,
    mask: IndexMask,
    pair: Option<&AliasPair>,
) -> bool {
    let lane = pair.map_or(0, |p| alias_state_of(mask, p));
    table.insert_lane(sum, mask, lane)
}

/// Offline sixteen-way compensatory lookup over two completed aliased
/// tables: for each left entry the required right-side true sum is probed
/// under all four right-lane interpretations. Returns the first present
/// pair of masks (left, right) whose true sums add to `target`.
pub fn find_solution_aliased(
    target: u64,
    left: &CertificateTable,
    right: &CertificateTable,
    cfg: &AliasConfig,
) -> Option<(IndexMask, IndexMask)> {
    for sum_l in left.iter_sums() {
        for lane_l in 0..4u8 {
            let Some(mask_l) = left.lane_mask(sum_l, lane_l) else {
                continue;
            };
            let true_l = match cfg.left {
                Some(ref p) => corrected_sum(sum_l, lane_l, p),
                None => sum_l,
            };
            let Some(need_r) = target.checked_sub(true_l) else {
                continue;
            };
            match cfg.right {
                Some(ref p) => {
                    for lane_r in 0..4u8 {
                        let Some(key_r) = aliased_value(need_r, lane_r, p) else {
                            continue;
                        };
                        if let Some(mask_r) = right.lane_mask(key_r, lane_r) {
                            return Some((mask_l, mask_r));
                        }
                    }
                }
                None => {
                    if let Some(mask_r) = right.lane_mask(need_r, 0) {
                        return Some((mask_l, mask_r));
                    }
                }
            }
        }
    }
    None
}
