//! The interleaved double meet-in-the-middle solver: two per-half
//! enumerations advanced column-by-column in lockstep, with every state
//! created or improved in a round checked against the opposite table's
//! end-of-round snapshot.
//!
//! Round count is therefore governed by the deeper of the two enumerations,
//! never their sum. By default the solve exits on the first solution;
//! `exhaust` completes both certificates so any later target can be
//! answered from the tables.

use crate::aliasing::{choose_alias_pairs, AliasConfig, AliasPolicy};
use crate::combine::{check_aliased, reconstruct, SolutionReport};
use crate::enumerator::{CertificateTable, EnumMode, Enumeration, RunReport, SumState};
use crate::error::{Error, Result};
use crate::instance::{metrics, Instance, Metrics};
use crate::litmus::{litmus, DEFAULT_COLUMNS, DEFAULT_THRESHOLD};
use crate::mask::IndexMask;
use std::time::{Duration, Instant};

/// How to partition the instance into halves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SplitPolicy {
    /// Element indices alternate between the halves.
    #[default]
    Alternating,
    /// Start alternating, then greedily swap cross-half pairs to balance
    /// the halves' early collision scores.
    LitmusBalanced,
}

impl SplitPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            SplitPolicy::Alternating => "alt",
            SplitPolicy::LitmusBalanced => "litmus",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "alt" => Some(SplitPolicy::Alternating),
            "litmus" => Some(SplitPolicy::LitmusBalanced),
            _ => None,
        }
    }
}

/// A partition of an instance into two halves with local-to-global index
/// maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitInstance {
    pub left: Vec<u64>,
    pub right: Vec<u64>,
    pub left_map: Vec<usize>,
    pub right_map: Vec<usize>,
    pub left_total: u64,
    pub right_total: u64,
    /// Width of the original instance.
    pub n: usize,
}

impl SplitInstance {
    fn from_assignment(instance: &Instance, left_map: Vec<usize>, right_map: Vec<usize>) -> Self {
        let left: Vec<u64> = left_map.iter().map(|&i| instance.elements()[i]).collect();
        let right: Vec<u64> = right_map.iter().map(|&i| instance.elements()[i]).collect();
        let left_total = left.iter().sum();
        let right_total = right.iter().sum();
        SplitInstance {
            left,
            right,
            left_map,
            right_map,
            left_total,
            right_total,
            n: instance.n(),
        }
    }

    pub fn half(&self, split: u8) -> &[u64] {
        if split == 0 {
            &self.left
        } else {
            &self.right
        }
    }

    pub fn half_total(&self, split: u8) -> u64 {
        if split == 0 {
            self.left_total
        } else {
            self.right_total
        }
    }
}

fn collision_score(values: &[u64]) -> u64 {
    litmus(values, DEFAULT_COLUMNS, DEFAULT_THRESHOLD).collisions
}

/// Splits an instance into two halves differing in size by at most one.
pub fn split(instance: &Instance, policy: SplitPolicy) -> SplitInstance {
    let left_map: Vec<usize> = (0..instance.n()).step_by(2).collect();
    let right_map: Vec<usize> = (1..instance.n()).step_by(2).collect();
    let parts = SplitInstance::from_assignment(instance, left_map, right_map);
    match policy {
        SplitPolicy::Alternating => parts,
        SplitPolicy::LitmusBalanced => balance_split(instance, parts),
    }
}

fn balance_split(instance: &Instance, mut parts: SplitInstance) -> SplitInstance {
    let mut score_l = collision_score(&parts.left);
    let mut score_r = collision_score(&parts.right);
    for _ in 0..instance.n() {
        let gap = score_l.abs_diff(score_r);
        if gap <= 1 {
            break;
        }
        let mut best: Option<(usize, usize, u64, u64, u64)> = None;
        for i in 0..parts.left.len() {
            for j in 0..parts.right.len() {
                let mut left = parts.left.clone();
                let mut right = parts.right.clone();
                std::mem::swap(&mut left[i], &mut right[j]);
                let sl = collision_score(&left);
                let sr = collision_score(&right);
                let candidate_gap = sl.abs_diff(sr);
                if candidate_gap < best.map_or(gap, |b| b.2) {
                    best = Some((i, j, candidate_gap, sl, sr));
                }
            }
        }
        match best {
            Some((i, j, _, sl, sr)) => {
                let gi = parts.left_map[i];
                let gj = parts.right_map[j];
                parts.left_map[i] = gj;
                parts.right_map[j] = gi;
                parts = SplitInstance::from_assignment(
                    instance,
                    parts.left_map.clone(),
                    parts.right_map.clone(),
                );
                score_l = sl;
                score_r = sr;
            }
            None => break,
        }
    }
    parts
}

/// Solve-time options.
#[derive(Clone, Copy, Debug)]
pub struct SolveConfig {
    pub mode: EnumMode,
    pub seed: u64,
    pub aliasing: bool,
    pub alias_policy: AliasPolicy,
    pub split_policy: SplitPolicy,
    /// Complete both certificates instead of exiting on the first solution.
    pub exhaust: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            mode: EnumMode::Deterministic,
            seed: 0,
            aliasing: false,
            alias_policy: AliasPolicy::LowestIndex,
            split_policy: SplitPolicy::Alternating,
            exhaust: false,
        }
    }
}

/// Result of a solve: the decision, a verified witness when one exists,
/// and the two per-half certificates with their counters.
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub decision: bool,
    /// Global-width witness mask summing to the target.
    pub witness: Option<IndexMask>,
    /// Which combination test fired.
    pub solution: Option<SolutionReport>,
    pub split: SplitInstance,
    pub left: CertificateTable,
    pub right: CertificateTable,
    /// Column rounds that created or improved at least one state.
    pub rounds: u32,
    pub aliasing: AliasConfig,
    pub aliased: bool,
    pub mode: EnumMode,
    pub seed: u64,
    pub exhaust: bool,
    pub wall_time: Duration,
}

impl SolveOutcome {
    pub fn u0(&self) -> u64 {
        self.left.distinct()
    }

    pub fn u1(&self) -> u64 {
        self.right.distinct()
    }

    pub fn half_metrics(&self, split: u8) -> Metrics {
        let (table, len) = if split == 0 {
            (&self.left, self.split.left.len())
        } else {
            (&self.right, self.split.right.len())
        };
        metrics(table.distinct(), len).expect("tables hold at least the root")
    }

    pub fn left_report(&self) -> &RunReport {
        self.left.report()
    }

    pub fn right_report(&self) -> &RunReport {
        self.right.report()
    }
}

/// Decides whether any submultiset of the instance sums to its target,
/// producing a canonical witness on success.
pub fn solve(instance: &Instance, config: &SolveConfig) -> Result<SolveOutcome> {
    let target = instance.target().ok_or(Error::MissingTarget)?;
    let started = Instant::now();
    let parts = split(instance, config.split_policy);
    let aliasing = if config.aliasing {
        choose_alias_pairs(&parts, config.alias_policy)
    } else {
        AliasConfig::none()
    };

    let mut left = Enumeration::new(&parts.left, config.mode, config.seed, aliasing.left, 0);
    let mut right = Enumeration::new(
        &parts.right,
        config.mode,
        config.seed.wrapping_add(1),
        aliasing.right,
        1,
    );

    let mut solution: Option<SolutionReport> = None;
    let mut rounds = 0u32;

    // Round 0: the two root states stand checked before any expansion.
    let roots = [
        SumState {
            sum: 0,
            mask: IndexMask::empty(parts.left.len()),
            split: 0,
        },
        SumState {
            sum: 0,
            mask: IndexMask::empty(parts.right.len()),
            split: 1,
        },
    ];
    for root in roots {
        if solution.is_some() {
            break;
        }
        solution = run_check(&root, &parts, &aliasing, left.table(), right.table(), target);
    }

    loop {
        if solution.is_some() && !config.exhaust {
            break;
        }
        let delta_left = left.advance();
        let delta_right = right.advance();
        if delta_left.is_none() && delta_right.is_none() {
            break;
        }
        let mut productive = false;
        for delta in [&delta_left, &delta_right].into_iter().flatten() {
            if !delta.states.is_empty() {
                productive = true;
            }
        }
        if productive {
            rounds += 1;
        }
        if solution.is_some() {
            // Exhaust mode keeps enumerating but the first solution stands.
            continue;
        }
        for delta in [delta_left, delta_right].into_iter().flatten() {
            for state in &delta.states {
                solution =
                    run_check(state, &parts, &aliasing, left.table(), right.table(), target);
                if solution.is_some() {
                    break;
                }
            }
            if solution.is_some() {
                break;
            }
        }
    }

    let witness = match &solution {
        Some(report) => Some(reconstruct(report, &parts, target)?),
        None => None,
    };

    Ok(SolveOutcome {
        decision: solution.is_some(),
        witness,
        solution,
        split: parts,
        left: left.into_table(),
        right: right.into_table(),
        rounds,
        aliasing,
        aliased: config.aliasing,
        mode: config.mode,
        seed: config.seed,
        exhaust: config.exhaust,
        wall_time: started.elapsed(),
    })
}

fn run_check(
    state: &SumState,
    parts: &SplitInstance,
    aliasing: &AliasConfig,
    left: &CertificateTable,
    right: &CertificateTable,
    target: u64,
) -> Option<SolutionReport> {
    let (other, own_pair, other_pair) = if state.split == 0 {
        (right, aliasing.left.as_ref(), aliasing.right.as_ref())
    } else {
        (left, aliasing.right.as_ref(), aliasing.left.as_ref())
    };
    check_aliased(
        state,
        own_pair,
        parts.half_total(state.split),
        other,
        other_pair,
        target,
    )
}
