//! Certificate files and the membership-query program built from them.
//!
//! Format, bit-exact under round-trip:
//!
//! ```text
//! # subset-sum certificate v1
//! n 3
//! elements 1 1 1
//! mode det
//! seed 0
//! 0\t0
//! 1\t4
//! 2\t6
//! 3\t7
//! ```
//!
//! Records are `sum <tab> mask-hex`, sorted by sum. A loaded certificate
//! answers targets for exactly the instance it was built from: a query
//! first compares the candidate's element list against the stored one and
//! reports `undefined` on any mismatch, never an answer.

use crate::enumerator::CertificateTable;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::mask::IndexMask;
use std::collections::HashMap;

const HEADER: &str = "# subset-sum certificate v1";

/// What a certificate says about a target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryAnswer {
    Yes,
    No,
    /// The queried instance is not the one this certificate was built for.
    Undefined,
}

impl QueryAnswer {
    pub fn as_str(&self) -> &'static str {
        match self {
            QueryAnswer::Yes => "yes",
            QueryAnswer::No => "no",
            QueryAnswer::Undefined => "undefined",
        }
    }
}

/// A self-contained decision/construction program for one instance: the
/// instance fingerprint plus the sum-to-witness map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateProgram {
    elements: Vec<u64>,
    mode: String,
    seed: u64,
    entries: HashMap<u64, IndexMask>,
}

impl CertificateProgram {
    pub fn from_table(table: &CertificateTable) -> Self {
        let width = table.width();
        let entries = table
            .iter_sums()
            .map(|sum| {
                let mask = table
                    .canonical_mask(sum)
                    .unwrap_or_else(|| IndexMask::empty(width));
                (sum, mask)
            })
            .collect();
        CertificateProgram {
            elements: table.elements().to_vec(),
            mode: table.mode().as_str().to_string(),
            seed: table.seed(),
            entries,
        }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn distinct(&self) -> u64 {
        self.entries.len() as u64
    }

    /// Membership of `target`, guarded by the instance fingerprint.
    pub fn query(&self, candidate: &Instance, target: u64) -> QueryAnswer {
        if candidate.elements() != self.elements.as_slice() {
            return QueryAnswer::Undefined;
        }
        if self.entries.contains_key(&target) {
            QueryAnswer::Yes
        } else {
            QueryAnswer::No
        }
    }

    /// Canonical witness for a target, if the sum is reachable.
    pub fn witness(&self, target: u64) -> Option<IndexMask> {
        self.entries.get(&target).copied()
    }
}

/// Renders a table as a certificate file.
pub fn format_certificate(table: &CertificateTable) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("n {}\n", table.width()));
    let elems: Vec<String> = table.elements().iter().map(u64::to_string).collect();
    out.push_str(&format!("elements {}\n", elems.join(" ")));
    out.push_str(&format!("mode {}\n", table.mode().as_str()));
    out.push_str(&format!("seed {}\n", table.seed()));
    let mut records: Vec<(u64, IndexMask)> = table
        .iter_sums()
        .filter_map(|sum| table.canonical_mask(sum).map(|mask| (sum, mask)))
        .collect();
    records.sort_unstable_by_key(|&(sum, _)| sum);
    for (sum, mask) in records {
        out.push_str(&format!("{sum}\t{}\n", mask.to_hex()));
    }
    out
}

fn header_field<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str> {
    let line = line.ok_or_else(|| Error::Parse(format!("certificate missing `{key}` line")))?;
    line.strip_prefix(key)
        .map(str::trim)
        .ok_or_else(|| Error::Parse(format!("expected `{key} ...`, found {line:?}")))
}

/// Parses a certificate file into a query program.
pub fn parse_certificate(text: &str) -> Result<CertificateProgram> {
    let mut lines = text.lines();
    match lines.next() {
        Some(line) if line == HEADER => {}
        other => {
            return Err(Error::Parse(format!(
                "bad certificate header: {other:?}"
            )))
        }
    }
    let n: usize = header_field(lines.next(), "n")?
        .parse()
        .map_err(|e| Error::Parse(format!("bad n: {e}")))?;
    let elements: Vec<u64> = header_field(lines.next(), "elements")?
        .split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|e| Error::Parse(format!("bad element {tok:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    if elements.len() != n {
        return Err(Error::Parse(format!(
            "header declares {n} elements, found {}",
            elements.len()
        )));
    }
    let mode = header_field(lines.next(), "mode")?.to_string();
    let seed: u64 = header_field(lines.next(), "seed")?
        .parse()
        .map_err(|e| Error::Parse(format!("bad seed: {e}")))?;

    let mut entries = HashMap::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let (sum_text, mask_text) = line
            .split_once('\t')
            .ok_or_else(|| Error::Parse(format!("bad record {line:?}")))?;
        let sum: u64 = sum_text
            .parse()
            .map_err(|e| Error::Parse(format!("bad sum {sum_text:?}: {e}")))?;
        let mask = IndexMask::from_hex(mask_text, n)?;
        if entries.insert(sum, mask).is_some() {
            return Err(Error::Parse(format!("duplicate record for sum {sum}")));
        }
    }
    if !entries.contains_key(&0) {
        return Err(Error::Parse("certificate missing the empty sum".into()));
    }
    Ok(CertificateProgram {
        elements,
        mode,
        seed,
        entries,
    })
}

pub fn write_certificate(path: &std::path::Path, table: &CertificateTable) -> Result<()> {
    Ok(std::fs::write(path, format_certificate(table))?)
}

pub fn read_certificate(path: &std::path::Path) -> Result<CertificateProgram> {
    parse_certificate(&std::fs::read_to_string(path)?)
}
