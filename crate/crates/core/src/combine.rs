//! Algebraic recombination across the two halves of a split: the real-time
//! check applied to every freshly enumerated state, and witness
//! reconstruction from a fired check.
//!
//! For a state with sum `s` from the half with total `T`, four tests cover
//! every way a solution can complete:
//!
//!   1. `s == t`                        — the state alone is a witness;
//!   2. `T - s == t`                    — its in-half complement is;
//!   3. `t - s` in the other table     — direct cross match;
//!   4. `t - (T - s)` in the other table — the state's complement plus a
//!      direct match opposite.
//!
//! Test 4 is one arithmetic test but is reported under distinct kinds for
//! auditing: `DoubleComplement` when the opposite hit is its half in full
//! (both sides read as complements), `Mixed` when fired from the right
//! half, `ComplementMerge` when fired from the left.

use crate::aliasing::{alias_state_of, aliased_value, corrected_sum, AliasPair};
use crate::enumerator::{CertificateTable, SumState};
use crate::error::{Error, Result};
use crate::mask::IndexMask;
use crate::solver::SplitInstance;

/// Which combination test produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    DirectOneHalf,
    SelfComplement,
    CrossDirect,
    DoubleComplement,
    Mixed,
    ComplementMerge,
}

impl SolutionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolutionKind::DirectOneHalf => "direct-one-half",
            SolutionKind::SelfComplement => "self-complement",
            SolutionKind::CrossDirect => "cross-direct",
            SolutionKind::DoubleComplement => "double-complement",
            SolutionKind::Mixed => "mixed",
            SolutionKind::ComplementMerge => "complement-merge",
        }
    }
}

/// A found solution in terms of per-half masks. A `None` mask contributes
/// nothing; the complement flags apply only to present masks, within their
/// half.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolutionReport {
    pub kind: SolutionKind,
    pub left_mask: Option<IndexMask>,
    pub right_mask: Option<IndexMask>,
    /// (left complemented, right complemented)
    pub complemented: (bool, bool),
}

fn report_for(
    state: &SumState,
    kind: SolutionKind,
    own_complemented: bool,
    other_mask: Option<IndexMask>,
    other_complemented: bool,
) -> SolutionReport {
    let own = Some(state.mask);
    if state.split == 0 {
        SolutionReport {
            kind,
            left_mask: own,
            right_mask: other_mask,
            complemented: (own_complemented, other_complemented),
        }
    } else {
        SolutionReport {
            kind,
            left_mask: other_mask,
            right_mask: own,
            complemented: (other_complemented, own_complemented),
        }
    }
}

/// Probes the opposite table for an entry whose *true* sum is `need`.
fn probe_true_sum(
    other: &CertificateTable,
    other_pair: Option<&AliasPair>,
    need: u64,
) -> Option<IndexMask> {
    match other_pair {
        None => other.lane_mask(need, 0),
        Some(p) => (0..4u8).find_map(|lane| {
            let key = aliased_value(need, lane, p)?;
            other.lane_mask(key, lane)
        }),
    }
}

/// The plain four-way check of a state against the opposite half's table
/// as it currently stands. `own_total` is the true element total of the
/// state's half.
pub fn check(
    state: &SumState,
    own_total: u64,
    other: &CertificateTable,
    target: u64,
) -> Option<SolutionReport> {
    check_aliased(state, None, own_total, other, None, target)
}

/// Lane-expanded form of [`check`] used when either half enumerates under
/// an alias pair: the state's true sum is recovered from its lane, and
/// cross probes fan out over the opposite table's four lanes.
pub fn check_aliased(
    state: &SumState,
    own_pair: Option<&AliasPair>,
    own_total: u64,
    other: &CertificateTable,
    other_pair: Option<&AliasPair>,
    target: u64,
) -> Option<SolutionReport> {
    let true_sum = match own_pair {
        Some(p) => corrected_sum(state.sum, alias_state_of(state.mask, p), p),
        None => state.sum,
    };
    debug_assert!(true_sum <= own_total);

    if true_sum == target {
        return Some(report_for(
            state,
            SolutionKind::DirectOneHalf,
            false,
            None,
            false,
        ));
    }
    if own_total - true_sum == target {
        return Some(report_for(
            state,
            SolutionKind::SelfComplement,
            true,
            None,
            false,
        ));
    }
    if let Some(need) = target.checked_sub(true_sum) {
        if let Some(hit) = probe_true_sum(other, other_pair, need) {
            return Some(report_for(
                state,
                SolutionKind::CrossDirect,
                false,
                Some(hit),
                false,
            ));
        }
    }
    let complement_sum = own_total - true_sum;
    if let Some(need) = target.checked_sub(complement_sum) {
        if let Some(hit) = probe_true_sum(other, other_pair, need) {
            // One shared arithmetic test, three audit labels.
            if hit == IndexMask::full(hit.width()) {
                return Some(report_for(
                    state,
                    SolutionKind::DoubleComplement,
                    true,
                    Some(hit.complement()),
                    true,
                ));
            }
            let kind = if state.split == 1 {
                SolutionKind::Mixed
            } else {
                SolutionKind::ComplementMerge
            };
            return Some(report_for(state, kind, true, Some(hit), false));
        }
    }
    None
}

/// Merges a report's per-half masks into a global-width witness,
/// complementing where flagged, and verifies it sums to `target`.
pub fn reconstruct(
    report: &SolutionReport,
    split: &SplitInstance,
    target: u64,
) -> Result<IndexMask> {
    let mut bits = 0u64;
    let mut sum = 0u64;
    let mut apply = |mask: Option<IndexMask>,
                     complemented: bool,
                     values: &[u64],
                     map: &[usize]| {
        if let Some(mask) = mask {
            let effective = if complemented { mask.complement() } else { mask };
            for i in effective.indices() {
                bits |= 1 << map[i];
                sum += values[i];
            }
        }
    };
    apply(
        report.left_mask,
        report.complemented.0,
        &split.left,
        &split.left_map,
    );
    apply(
        report.right_mask,
        report.complemented.1,
        &split.right,
        &split.right_map,
    );
    if sum != target {
        return Err(Error::InconsistentReport {
            expected: target,
            actual: sum,
        });
    }
    Ok(IndexMask::from_bits(bits, split.n))
}
