//! Column-wise unique-subset-sum enumeration producing the constructive
//! certificate: every distinct sum mapped to a canonical witness mask.
//!
//! The frontier at column `k` holds one state per newly reachable sum, all
//! with popcount `k`. Each round extends every frontier state by every
//! unused element. A sum seen for the first time is recorded and queued; a
//! sum seen again triggers a canonicality contest, and a winning challenger
//! replaces the incumbent both in the memo and in the pending frontier, so
//! improved prefixes are re-expanded.
//!
//! Three comparator modes:
//! - deterministic: direct lexicographic comparison of the index masks;
//! - randomized: seeded polynomial prefix hashes locate the first differing
//!   index by binary search, preserving the same lex-minimal canonical
//!   choice (up to hash collision, which is counted when observed);
//! - first-wins: no ordering at all, the first discovered mask is kept.
//!
//! With an alias pair configured, sums are computed under value
//! substitution and the memo keeps four canonical lanes per sum (see
//! [`crate::aliasing`]).

use crate::aliasing::{alias_state, AliasPair};
use crate::hashing::MaskHasher;
use crate::instance::Instance;
use crate::mask::{lex_smaller_raw, IndexMask};
use indexmap::IndexMap;
use std::collections::HashMap;
use std::time::{Duration, Instant};

/// Comparator / canonicality mode of an enumeration run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    Deterministic,
    Randomized,
    /// Randomized regime with no ordering: first discovered mask is
    /// canonical.
    RandomizedFirstWins,
}

impl EnumMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            EnumMode::Deterministic => "det",
            EnumMode::Randomized => "rand",
            EnumMode::RandomizedFirstWins => "rand-fw",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "det" => Some(EnumMode::Deterministic),
            "rand" => Some(EnumMode::Randomized),
            "rand-fw" => Some(EnumMode::RandomizedFirstWins),
            _ => None,
        }
    }
}

/// Counters and timing for one enumeration run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    /// Entries inserted as new (slot first fills), including the root.
    pub states_created: u64,
    /// Extensions attempted from expanded states.
    pub extension_attempts: u64,
    /// Canonicality comparator invocations.
    pub lex_comparisons: u64,
    /// Lex improvements that re-queued a state for expansion.
    pub reexpansions: u64,
    /// Full-mask hash agreements on unequal masks (randomized mode).
    pub hash_collisions: u64,
    /// Extensions that reached an existing slot through a different subset.
    pub collisions: u64,
    /// Deepest column that created or improved a state.
    pub max_column: u32,
    pub wall_time: Duration,
}

impl RunReport {
    /// The extension budget that must hold after every run.
    pub fn within_budget(&self, set_size: usize) -> bool {
        self.extension_attempts <= (self.states_created + self.reexpansions) * set_size as u64
    }
}

#[derive(Clone, Copy, Debug)]
struct LaneSlot {
    mask: IndexMask,
    hash: u64,
}

/// Up to four canonical masks for one sum, indexed by alias lane.
/// Plain runs use lane 0 only.
#[derive(Clone, Debug, Default)]
pub struct MemoEntry {
    lanes: [Option<LaneSlot>; 4],
}

impl MemoEntry {
    pub fn lane(&self, lane: u8) -> Option<IndexMask> {
        self.lanes[lane as usize].map(|slot| slot.mask)
    }

    pub fn occupied_lanes(&self) -> impl Iterator<Item = (u8, IndexMask)> + '_ {
        self.lanes
            .iter()
            .enumerate()
            .filter_map(|(i, slot)| slot.map(|s| (i as u8, s.mask)))
    }
}

/// The constructive certificate: distinct sums in discovery order, each
/// with its canonical mask(s), plus the run's counters.
#[derive(Clone, Debug)]
pub struct CertificateTable {
    elements: Vec<u64>,
    entries: IndexMap<u64, MemoEntry>,
    report: RunReport,
    mode: EnumMode,
    seed: u64,
    alias: Option<AliasPair>,
}

impl CertificateTable {
    /// An empty table holding only the root entry `0 -> empty mask`.
    pub fn new(elements: Vec<u64>, mode: EnumMode, seed: u64, alias: Option<AliasPair>) -> Self {
        let width = elements.len();
        let mut entries = IndexMap::new();
        entries.insert(
            0u64,
            MemoEntry {
                lanes: [
                    Some(LaneSlot {
                        mask: IndexMask::empty(width),
                        hash: 0,
                    }),
                    None,
                    None,
                    None,
                ],
            },
        );
        CertificateTable {
            elements,
            entries,
            report: RunReport {
                states_created: 1,
                ..RunReport::default()
            },
            mode,
            seed,
            alias,
        }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn width(&self) -> usize {
        self.elements.len()
    }

    /// Count of distinct sums (U).
    pub fn distinct(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn contains(&self, sum: u64) -> bool {
        self.entries.contains_key(&sum)
    }

    /// Canonical mask of a sum in plain (single-lane) runs.
    pub fn canonical_mask(&self, sum: u64) -> Option<IndexMask> {
        self.lane_mask(sum, 0)
    }

    pub fn lane_mask(&self, sum: u64, lane: u8) -> Option<IndexMask> {
        self.entries.get(&sum).and_then(|e| e.lane(lane))
    }

    /// Sums in discovery order.
    pub fn iter_sums(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter_entries(&self) -> impl Iterator<Item = (u64, &MemoEntry)> + '_ {
        self.entries.iter().map(|(&sum, entry)| (sum, entry))
    }

    /// Occupied slots per lane.
    pub fn lane_counts(&self) -> [u64; 4] {
        let mut counts = [0u64; 4];
        for entry in self.entries.values() {
            for (lane, slot) in entry.lanes.iter().enumerate() {
                if slot.is_some() {
                    counts[lane] += 1;
                }
            }
        }
        counts
    }

    pub fn report(&self) -> &RunReport {
        &self.report
    }

    pub fn mode(&self) -> EnumMode {
        self.mode
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn alias(&self) -> Option<&AliasPair> {
        self.alias.as_ref()
    }

    /// Lane-aware insertion under the deterministic lex order: stores the
    /// mask iff the lane is empty or the challenger is lex-smaller. Returns
    /// whether the slot changed.
    pub fn insert_lane(&mut self, sum: u64, mask: IndexMask, lane: u8) -> bool {
        let entry = self.entries.entry(sum).or_default();
        let slot = &mut entry.lanes[lane as usize];
        match slot {
            None => {
                *slot = Some(LaneSlot { mask, hash: 0 });
                true
            }
            Some(incumbent) => {
                if lex_smaller_raw(mask.bits(), incumbent.mask.bits()) {
                    *slot = Some(LaneSlot { mask, hash: 0 });
                    true
                } else {
                    false
                }
            }
        }
    }
}

/// One frontier element: a sum, its canonical mask, and which half of a
/// split it belongs to (0 for standalone runs).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumState {
    pub sum: u64,
    pub mask: IndexMask,
    pub split: u8,
}

/// Snapshot of the pending states at one column.
#[derive(Clone, Debug)]
pub struct Frontier {
    pub states: Vec<SumState>,
    pub column: u32,
}

/// States created or lex-improved during one column round, in first-touch
/// order with the final mask of the round.
#[derive(Clone, Debug)]
pub struct ColumnDelta {
    pub column: u32,
    pub states: Vec<SumState>,
}

#[derive(Clone, Copy)]
struct EngState {
    sum: u64,
    bits: u64,
    hash: u64,
}

/// A stepwise enumeration run. `advance` expands one column; the solver
/// drives two of these in lockstep, the litmus test truncates after a few
/// columns, and [`Enumeration::finish`] runs to exhaustion.
pub struct Enumeration {
    table: CertificateTable,
    frontier: Vec<EngState>,
    column: u32,
    hasher: Option<MaskHasher>,
    split_id: u8,
    started: Instant,
}

impl Enumeration {
    pub fn new(
        elements: &[u64],
        mode: EnumMode,
        seed: u64,
        alias: Option<AliasPair>,
        split_id: u8,
    ) -> Self {
        let hasher = match mode {
            EnumMode::Randomized => Some(MaskHasher::new(seed, elements.len())),
            _ => None,
        };
        Enumeration {
            table: CertificateTable::new(elements.to_vec(), mode, seed, alias),
            frontier: vec![EngState {
                sum: 0,
                bits: 0,
                hash: 0,
            }],
            column: 0,
            hasher,
            split_id,
            started: Instant::now(),
        }
    }

    pub fn table(&self) -> &CertificateTable {
        &self.table
    }

    pub fn is_exhausted(&self) -> bool {
        self.frontier.is_empty()
    }

    pub fn frontier(&self) -> Frontier {
        let width = self.table.width();
        Frontier {
            states: self
                .frontier
                .iter()
                .map(|st| SumState {
                    sum: st.sum,
                    mask: IndexMask::from_bits(st.bits, width),
                    split: self.split_id,
                })
                .collect(),
            column: self.column,
        }
    }

    /// Expands the current column. Returns `None` once the frontier is
    /// empty.
    pub fn advance(&mut self) -> Option<ColumnDelta> {
        if self.frontier.is_empty() {
            return None;
        }
        self.column += 1;
        let elements = &self.table.elements;
        let entries = &mut self.table.entries;
        let report = &mut self.table.report;
        let mode = self.table.mode;
        let alias = self.table.alias;
        let hasher = self.hasher.as_ref();
        let n = elements.len();
        let mut next: Vec<Option<EngState>> = Vec::new();
        let mut next_pos: HashMap<(u64, u8), usize> = HashMap::new();
        // (sum, lane) -> final mask bits this round, in first-touch order.
        let mut events: IndexMap<(u64, u8), u64> = IndexMap::new();

        let frontier = std::mem::take(&mut self.frontier);
        for state in &frontier {
            for i in 0..n {
                if state.bits & (1 << i) != 0 {
                    continue;
                }
                report.extension_attempts += 1;
                let value = match alias {
                    Some(ref p) if i == p.i1 => p.x0,
                    _ => elements[i],
                };
                let new_sum = state.sum + value;
                let new_bits = state.bits | (1 << i);
                let new_hash = match hasher {
                    Some(h) => h.append(state.hash, i),
                    None => 0,
                };
                let lane = alias.as_ref().map_or(0, |p| alias_state(new_bits, p));

                let entry = entries.entry(new_sum).or_default();
                let slot = &mut entry.lanes[lane as usize];
                match slot {
                    None => {
                        *slot = Some(LaneSlot {
                            mask: IndexMask::from_bits(new_bits, n),
                            hash: new_hash,
                        });
                        report.states_created += 1;
                        let pos = next.len();
                        next.push(Some(EngState {
                            sum: new_sum,
                            bits: new_bits,
                            hash: new_hash,
                        }));
                        next_pos.insert((new_sum, lane), pos);
                        events.insert((new_sum, lane), new_bits);
                    }
                    Some(incumbent) => {
                        let inc_bits = incumbent.mask.bits();
                        let inc_hash = incumbent.hash;
                        if inc_bits != new_bits {
                            report.collisions += 1;
                        }
                        if challenger_wins(mode, hasher, n, report, new_bits, new_hash, inc_bits, inc_hash)
                        {
                            *slot = Some(LaneSlot {
                                mask: IndexMask::from_bits(new_bits, n),
                                hash: new_hash,
                            });
                            report.reexpansions += 1;
                            // The superseded state leaves the pending frontier.
                            if let Some(&pos) = next_pos.get(&(new_sum, lane)) {
                                next[pos] = None;
                            }
                            let pos = next.len();
                            next.push(Some(EngState {
                                sum: new_sum,
                                bits: new_bits,
                                hash: new_hash,
                            }));
                            next_pos.insert((new_sum, lane), pos);
                            *events.entry((new_sum, lane)).or_insert(new_bits) = new_bits;
                        }
                    }
                }
            }
        }

        self.frontier = next.into_iter().flatten().collect();
        if !events.is_empty() {
            report.max_column = self.column;
        }
        let split = self.split_id;
        Some(ColumnDelta {
            column: self.column,
            states: events
                .into_iter()
                .map(|((sum, _lane), bits)| SumState {
                    sum,
                    mask: IndexMask::from_bits(bits, n),
                    split,
                })
                .collect(),
        })
    }

    /// Finalizes without requiring exhaustion (used by truncated runs).
    pub fn into_table(mut self) -> CertificateTable {
        self.table.report.wall_time = self.started.elapsed();
        let n = self.table.elements.len();
        assert!(
            self.table.report.within_budget(n),
            "extension budget exceeded: {:?}",
            self.table.report
        );
        self.table
    }

    /// Runs the enumeration to exhaustion and finalizes.
    pub fn finish(mut self) -> CertificateTable {
        while self.advance().is_some() {}
        self.into_table()
    }
}

#[allow(clippy::too_many_arguments)]
fn challenger_wins(
    mode: EnumMode,
    hasher: Option<&MaskHasher>,
    width: usize,
    report: &mut RunReport,
    new_bits: u64,
    new_hash: u64,
    inc_bits: u64,
    inc_hash: u64,
) -> bool {
    match mode {
        EnumMode::Deterministic => {
            report.lex_comparisons += 1;
            lex_smaller_raw(new_bits, inc_bits)
        }
        EnumMode::Randomized => {
            report.lex_comparisons += 1;
            let hasher = hasher.expect("randomized mode has a hasher");
            match hasher.first_divergence(new_bits, new_hash, inc_bits, inc_hash, width) {
                None => {
                    if new_bits != inc_bits {
                        // Full-prefix hash collision; fall back to the direct
                        // comparison so the certificate stays canonical.
                        report.hash_collisions += 1;
                        lex_smaller_raw(new_bits, inc_bits)
                    } else {
                        false
                    }
                }
                Some(index) => (new_bits >> index) & 1 == 0,
            }
        }
        EnumMode::RandomizedFirstWins => false,
    }
}

/// Full deterministic enumeration with lex-minimal canonical masks.
pub fn enumerate_deterministic(elements: &[u64]) -> CertificateTable {
    Enumeration::new(elements, EnumMode::Deterministic, 0, None, 0).finish()
}

/// Full randomized enumeration; the sum set is seed-independent and the
/// canonical masks match the deterministic run up to hash collisions.
pub fn enumerate_randomized(elements: &[u64], seed: u64) -> CertificateTable {
    Enumeration::new(elements, EnumMode::Randomized, seed, None, 0).finish()
}

/// Enumeration of a validated instance in the given mode.
pub fn enumerate_instance(instance: &Instance, mode: EnumMode, seed: u64) -> CertificateTable {
    Enumeration::new(instance.elements(), mode, seed, None, 0).finish()
}
