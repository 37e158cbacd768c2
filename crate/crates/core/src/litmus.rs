//! Polynomial-time structural hardness estimation: run the deterministic
//! enumerator for a few initial columns and measure how often extensions
//! land on an already-reached sum through a different subset. A high early
//! collision rate predicts a small distinct-sum set (an easy instance); a
//! collision-free opening predicts a hard, unstructured one.

use crate::enumerator::{EnumMode, Enumeration};

pub const DEFAULT_COLUMNS: u32 = 4;
pub const DEFAULT_THRESHOLD: f64 = 0.05;

/// Outcome of a truncated enumeration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LitmusReport {
    /// Column cap the run was truncated at.
    pub columns: u32,
    /// Extension attempts within the cap.
    pub attempts: u64,
    /// Distinct sums reached (including the empty sum).
    pub distinct: u64,
    /// Attempts that reached an existing sum via a different subset.
    pub collisions: u64,
    /// `collisions / attempts`, 0 when no attempts were made.
    pub collision_rate: f64,
    /// Low collision rate predicts a large sum set.
    pub predicted_hard: bool,
}

/// Runs the enumerator truncated to `columns` columns and scores the early
/// collision rate against `threshold`.
pub fn litmus(elements: &[u64], columns: u32, threshold: f64) -> LitmusReport {
    let mut run = Enumeration::new(elements, EnumMode::Deterministic, 0, None, 0);
    for _ in 0..columns {
        if run.advance().is_none() {
            break;
        }
    }
    let table = run.into_table();
    let report = table.report();
    let collision_rate = if report.extension_attempts == 0 {
        0.0
    } else {
        report.collisions as f64 / report.extension_attempts as f64
    };
    LitmusReport {
        columns,
        attempts: report.extension_attempts,
        distinct: table.distinct(),
        collisions: report.collisions,
        collision_rate,
        predicted_hard: collision_rate < threshold,
    }
}
