//! Sweep harness for the structural experiments: generate an instance per
//! (family, knob, seed), enumerate both halves of an alternating split in
//! full, and record per-half certificate sizes against the `2^(n/2)`
//! worst case.
//!
//! Plan files are line-oriented `key=value` rows:
//!
//! ```text
//! # density sweep
//! family=density w=16 n=32 seeds=10 mode=det
//! family=duplicates dup=2 n=32 seeds=10
//! ```
//!
//! Result rows use the same shape and round-trip exactly through
//! [`format_rows`] / [`parse_rows`].

use crate::enumerator::{EnumMode, Enumeration};
use crate::error::{Error, Result};
use crate::generators::{generate, Family, GenSpec};
use crate::instance::metrics;
use crate::solver::{split, SplitPolicy};
use std::time::Instant;

/// One plan line: a family spec swept over `seeds` consecutive seeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanRow {
    pub spec: GenSpec,
    pub seeds: u64,
    pub mode: EnumMode,
}

/// One completed measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub family: Family,
    pub knob: String,
    pub n: usize,
    pub seed: u64,
    pub u0: u64,
    pub u1: u64,
    /// Mean per-half distinct-sum count over `2^(n/2)`.
    pub ratio: f64,
    pub hc0: f64,
    pub hc1: f64,
    /// Extension attempts summed over both halves.
    pub attempts: u64,
    pub wall_ns: u64,
    pub mode: EnumMode,
}

/// Runs one (spec, seed) measurement: full enumeration of both halves,
/// no early exit.
pub fn bench_row(spec: &GenSpec, mode: EnumMode) -> Result<BenchRow> {
    let started = Instant::now();
    let instance = generate(spec)?;
    let parts = split(&instance, SplitPolicy::Alternating);
    let left = Enumeration::new(&parts.left, mode, spec.seed, None, 0).finish();
    let right = Enumeration::new(&parts.right, mode, spec.seed.wrapping_add(1), None, 1).finish();
    let u0 = left.distinct();
    let u1 = right.distinct();
    let half_cap = (instance.n() as f64 / 2.0).exp2();
    let ratio = (u0 + u1) as f64 / 2.0 / half_cap;
    Ok(BenchRow {
        family: spec.family,
        knob: spec.knob(),
        n: instance.n(),
        seed: spec.seed,
        u0,
        u1,
        ratio,
        hc0: metrics(u0, parts.left.len())?.hc,
        hc1: metrics(u1, parts.right.len())?.hc,
        attempts: left.report().extension_attempts + right.report().extension_attempts,
        wall_ns: started.elapsed().as_nanos() as u64,
        mode,
    })
}

/// Expands every plan row over its seeds, in plan order. Per-row failures
/// are reported alongside the rows that did complete.
pub fn run_plan(plan: &[PlanRow]) -> (Vec<BenchRow>, Vec<String>) {
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for row in plan {
        for seed in 0..row.seeds {
            let mut spec = row.spec;
            spec.seed = seed;
            match bench_row(&spec, row.mode) {
                Ok(bench) => rows.push(bench),
                Err(err) => errors.push(format!(
                    "family={} knob={} seed={seed}: {err}",
                    spec.family,
                    spec.knob()
                )),
            }
        }
    }
    (rows, errors)
}

fn parse_kv(token: &str) -> Result<(&str, &str)> {
    token
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("expected key=value, found {token:?}")))
}

/// Parses a plan file.
pub fn parse_plan(text: &str) -> Result<Vec<PlanRow>> {
    let mut plan = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut family = None;
        let mut n = None;
        let mut seeds = 1u64;
        let mut mode = EnumMode::Deterministic;
        let mut w = 32u32;
        let mut dup = 0usize;
        let mut seq = 0usize;
        let mut seq_len = 4usize;
        for token in line.split_whitespace() {
            let (key, value) = parse_kv(token)?;
            let bad = |e| Error::Parse(format!("bad {key}={value}: {e}"));
            match key {
                "family" => {
                    family = Some(Family::parse(value).ok_or_else(|| {
                        Error::Parse(format!("unknown family {value:?}"))
                    })?)
                }
                "n" => n = Some(value.parse().map_err(bad)?),
                "seeds" => seeds = value.parse().map_err(bad)?,
                "mode" => {
                    mode = EnumMode::parse(value)
                        .ok_or_else(|| Error::Parse(format!("unknown mode {value:?}")))?
                }
                "w" => w = value.parse().map_err(bad)?,
                "dup" => dup = value.parse().map_err(bad)?,
                "seq" => seq = value.parse().map_err(bad)?,
                "seqlen" => seq_len = value.parse().map_err(bad)?,
                other => return Err(Error::Parse(format!("unknown plan key {other:?}"))),
            }
        }
        let family =
            family.ok_or_else(|| Error::Parse(format!("plan line missing family: {line:?}")))?;
        let n = n.ok_or_else(|| Error::Parse(format!("plan line missing n: {line:?}")))?;
        let mut spec = GenSpec::new(family, n);
        spec.w = w;
        spec.dup_count = dup;
        spec.seq_count = seq;
        spec.seq_len = seq_len;
        plan.push(PlanRow { spec, seeds, mode });
    }
    Ok(plan)
}

/// Fixed field order; one row per line.
pub fn format_rows(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&format!(
            "family={} knob={} n={} seed={} u0={} u1={} ratio={} hc0={} hc1={} attempts={} wall_ns={} mode={}\n",
            row.family,
            row.knob,
            row.n,
            row.seed,
            row.u0,
            row.u1,
            row.ratio,
            row.hc0,
            row.hc1,
            row.attempts,
            row.wall_ns,
            row.mode.as_str(),
        ));
    }
    out
}

/// Inverse of [`format_rows`].
pub fn parse_rows(text: &str) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = std::collections::HashMap::new();
        for token in line.split_whitespace() {
            let (key, value) = parse_kv(token)?;
            fields.insert(key, value);
        }
        let get = |key: &str| {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| Error::Parse(format!("row missing {key}: {line:?}")))
        };
        let parse_f64 = |key: &str| -> Result<f64> {
            get(key)?
                .parse()
                .map_err(|e| Error::Parse(format!("bad {key}: {e}")))
        };
        rows.push(BenchRow {
            family: Family::parse(get("family")?)
                .ok_or_else(|| Error::Parse(format!("unknown family in row: {line:?}")))?,
            knob: get("knob")?.to_string(),
            n: get("n")?
                .parse()
                .map_err(|e| Error::Parse(format!("bad n: {e}")))?,
            seed: get("seed")?
                .parse()
                .map_err(|e| Error::Parse(format!("bad seed: {e}")))?,
            u0: get("u0")?
                .parse()
                .map_err(|e| Error::Parse(format!("bad u0: {e}")))?,
            u1: get("u1")?
                .parse()
                .map_err(|e| Error::Parse(format!("bad u1: {e}")))?,
            ratio: parse_f64("ratio")?,
            hc0: parse_f64("hc0")?,
            hc1: parse_f64("hc1")?,
            attempts: get("attempts")?
                .parse()
                .map_err(|e| Error::Parse(format!("bad attempts: {e}")))?,
            wall_ns: get("wall_ns")?
                .parse()
                .map_err(|e| Error::Parse(format!("bad wall_ns: {e}")))?,
            mode: EnumMode::parse(get("mode")?)
                .ok_or_else(|| Error::Parse(format!("unknown mode in row: {line:?}")))?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_parses_and_runs() {
        let plan = parse_plan(
            "# demo\nfamily=ones n=8 seeds=2\nfamily=density w=8 n=10 seeds=1 mode=rand\n",
        )
        .unwrap();
        assert_eq!(plan.len(), 2);
        assert_eq!(plan[0].spec.family, Family::Ones);
        assert_eq!(plan[0].seeds, 2);
        assert_eq!(plan[1].mode, EnumMode::Randomized);

        let (rows, errors) = run_plan(&plan);
        assert!(errors.is_empty());
        assert_eq!(rows.len(), 3);
        // ones n=8: halves of four ones, U = 5 per half.
        assert_eq!(rows[0].u0, 5);
        assert_eq!(rows[0].u1, 5);
        assert_eq!(rows[0].ratio, 5.0 / 16.0);
    }

    #[test]
    fn rows_round_trip_exactly() {
        let plan = parse_plan("family=dp-gap n=12 seeds=2\nfamily=progressions seq=1 n=12 seeds=1\n")
            .unwrap();
        let (rows, errors) = run_plan(&plan);
        assert!(errors.is_empty());
        let text = format_rows(&rows);
        let reparsed = parse_rows(&text).unwrap();
        assert_eq!(rows, reparsed);
        assert_eq!(format_rows(&reparsed), text);
    }

    #[test]
    fn per_row_failures_recorded_without_aborting() {
        let plan = parse_plan("family=duplicates dup=3 n=16 seeds=1\nfamily=ones n=4 seeds=1\n")
            .unwrap();
        let (rows, errors) = run_plan(&plan);
        assert_eq!(rows.len(), 1);
        assert_eq!(errors.len(), 1);
        assert!(errors[0].contains("must be even"));
    }

    #[test]
    fn rejects_malformed_plans() {
        assert!(parse_plan("family=nosuch n=4").is_err());
        assert!(parse_plan("n=4 seeds=2").is_err());
        assert!(parse_plan("family=ones n=4 zzz=1").is_err());
    }
}
