//! Problem instances, validation, subset arithmetic, and structural metrics.
//!
//! An instance is a multiset of positive 64-bit integers with an optional
//! target. Validation fixes the element count to the mask width and checks
//! that the total leaves headroom for alias substitution, so all downstream
//! sum arithmetic stays in `u64` (128-bit only at validation and merge
//! boundaries).

use crate::error::{Error, Result};
use crate::mask::{IndexMask, MAX_WIDTH};
use serde::Deserialize;

/// Default cap on element count (index masks are one machine word).
pub const MAX_ELEMENTS: usize = MAX_WIDTH;

/// Totals above this risk overflow once alias substitution or merge
/// arithmetic adds another element value on top.
pub const MAX_TOTAL: u64 = u64::MAX / 2;

/// A validated subset-sum instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    elements: Vec<u64>,
    target: Option<u64>,
    total: u64,
}

impl Instance {
    /// Validates and constructs an instance, computing the total.
    ///
    /// Rejects non-positive elements, element counts over [`MAX_ELEMENTS`],
    /// and totals over [`MAX_TOTAL`].
    pub fn new(elements: Vec<u64>, target: Option<u64>) -> Result<Self> {
        if elements.len() > MAX_ELEMENTS {
            return Err(Error::TooManyElements {
                n: elements.len(),
                max: MAX_ELEMENTS,
            });
        }
        if let Some(index) = elements.iter().position(|&a| a == 0) {
            return Err(Error::NonPositiveElement { index });
        }
        let total: u128 = elements.iter().map(|&a| a as u128).sum();
        if total > MAX_TOTAL as u128 {
            return Err(Error::OverflowRisk { total });
        }
        Ok(Instance {
            elements,
            target,
            total: total as u64,
        })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn n(&self) -> usize {
        self.elements.len()
    }

    pub fn target(&self) -> Option<u64> {
        self.target
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Same instance with the target replaced.
    pub fn with_target(mut self, target: Option<u64>) -> Self {
        self.target = target;
        self
    }

    /// Sum of the elements selected by `mask`.
    pub fn subset_sum(&self, mask: IndexMask) -> Result<u64> {
        if mask.width() != self.n() {
            return Err(Error::WidthMismatch {
                left: mask.width(),
                right: self.n(),
            });
        }
        Ok(subset_sum_over(&self.elements, mask.bits()))
    }
}

/// Sum of `values[i]` over the set bits of `mask_bits`. Callers guarantee
/// the bits stay below `values.len()`.
#[inline]
pub(crate) fn subset_sum_over(values: &[u64], mask_bits: u64) -> u64 {
    let mut rest = mask_bits;
    let mut sum = 0u64;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        sum += values[i];
        rest &= rest - 1;
    }
    sum
}

/// Structural size measures derived from a distinct-sum count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Metrics {
    /// Count of distinct subset sums (U).
    pub u: u64,
    /// Collision entropy in bits: `n - log2(U)`.
    pub hc: f64,
    /// `U / 2^(n/2)`.
    pub ratio: f64,
}

/// Computes collision entropy and the half-space ratio for `u` distinct
/// sums over `n` elements.
pub fn metrics(u: u64, n: usize) -> Result<Metrics> {
    if u == 0 {
        return Err(Error::ZeroU);
    }
    let hc = n as f64 - (u as f64).log2();
    let ratio = u as f64 / (n as f64 / 2.0).exp2();
    Ok(Metrics { u, hc, ratio })
}

// ---------------------------------------------------------------------------
// Instance text format
//
//   # optional comment lines
//   <n>
//   <target or ->
//   <space-separated elements>
//
// A JSON object {"elements": [...], "target": ...} is accepted as well.
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct InstanceJson {
    elements: Vec<u64>,
    #[serde(default)]
    target: Option<u64>,
}

/// Parses either the line-oriented text format or the JSON object form.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let json: InstanceJson = serde_json::from_str(trimmed)
            .map_err(|e| Error::Parse(format!("bad instance json: {e}")))?;
        return Instance::new(json.elements, json.target);
    }

    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n_line = lines
        .next()
        .ok_or_else(|| Error::Parse("missing element count line".into()))?;
    let n: usize = n_line
        .parse()
        .map_err(|e| Error::Parse(format!("bad element count {n_line:?}: {e}")))?;
    let target_line = lines
        .next()
        .ok_or_else(|| Error::Parse("missing target line".into()))?;
    let target = if target_line == "-" {
        None
    } else {
        Some(
            target_line
                .parse()
                .map_err(|e| Error::Parse(format!("bad target {target_line:?}: {e}")))?,
        )
    };
    let elements_line = lines.next().unwrap_or("");
    let elements: Vec<u64> = elements_line
        .split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|e| Error::Parse(format!("bad element {tok:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    if elements.len() != n {
        return Err(Error::Parse(format!(
            "declared {n} elements, found {}",
            elements.len()
        )));
    }
    Instance::new(elements, target)
}

/// Renders the text format, optionally preceded by `#`-prefixed comments.
pub fn format_instance(instance: &Instance, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(comment) = comment {
        for line in comment.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out.push_str(&instance.n().to_string());
    out.push('\n');
    match instance.target() {
        Some(t) => out.push_str(&t.to_string()),
        None => out.push('-'),
    }
    out.push('\n');
    let elems: Vec<String> = instance.elements().iter().map(u64::to_string).collect();
    out.push_str(&elems.join(" "));
    out.push('\n');
    out
}

pub fn read_instance(path: &std::path::Path) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn write_instance(
    path: &std::path::Path,
    instance: &Instance,
    comment: Option<&str>,
) -> Result<()> {
    Ok(std::fs::write(path, format_instance(instance, comment))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_and_totals() {
        let inst = Instance::new(vec![3, 5], Some(8)).unwrap();
        assert_eq!(inst.total(), 8);
        assert_eq!(inst.n(), 2);
    }

    #[test]
    fn rejects_zero_element() {
        assert!(matches!(
            Instance::new(vec![0, 2], None),
            Err(Error::NonPositiveElement { index: 0 })
        ));
    }

    #[test]
    fn rejects_too_many_elements() {
        assert!(matches!(
            Instance::new(vec![1; 65], None),
            Err(Error::TooManyElements { n: 65, max: 64 })
        ));
    }

    #[test]
    fn rejects_overflow_risk() {
        assert!(matches!(
            Instance::new(vec![u64::MAX / 2, u64::MAX / 2], None),
            Err(Error::OverflowRisk { .. })
        ));
    }

    #[test]
    fn subset_sum_examples() {
        let inst = Instance::new(vec![1, 2, 3], None).unwrap();
        assert_eq!(
            inst.subset_sum(IndexMask::from_bits(0b011, 3)).unwrap(),
            3
        );
        assert_eq!(inst.subset_sum(IndexMask::empty(3)).unwrap(), 0);
        let inst = Instance::new(vec![1, 2, 4, 8], None).unwrap();
        assert_eq!(inst.subset_sum(IndexMask::full(4)).unwrap(), 15);
        assert!(inst.subset_sum(IndexMask::empty(3)).is_err());
    }

    #[test]
    fn subset_sum_complement_covers_total() {
        let inst = Instance::new(vec![4, 9, 2, 7], None).unwrap();
        for bits in 0..16u64 {
            let m = IndexMask::from_bits(bits, 4);
            let direct = inst.subset_sum(m).unwrap();
            let comp = inst.subset_sum(m.complement()).unwrap();
            assert_eq!(direct + comp, inst.total());
        }
    }

    #[test]
    fn metrics_examples() {
        let m = metrics(4, 3).unwrap();
        assert!((m.hc - 1.0).abs() < 1e-9);
        let m = metrics(256, 8).unwrap();
        assert!(m.hc.abs() < 1e-9);
        let m = metrics(1, 0).unwrap();
        assert!(m.hc.abs() < 1e-9);
        assert!(metrics(0, 4).is_err());
    }

    #[test]
    fn metrics_monotone_in_u() {
        let mut last = f64::INFINITY;
        for u in [1u64, 2, 5, 9, 16] {
            let m = metrics(u, 4).unwrap();
            assert!(m.hc < last);
            last = m.hc;
        }
    }

    #[test]
    fn text_format_round_trip() {
        let inst = Instance::new(vec![5, 1, 9], Some(6)).unwrap();
        let text = format_instance(&inst, Some("family=test"));
        assert_eq!(parse_instance(&text).unwrap(), inst);

        let no_target = Instance::new(vec![2, 2], None).unwrap();
        let text = format_instance(&no_target, None);
        assert_eq!(parse_instance(&text).unwrap(), no_target);
    }

    #[test]
    fn json_form_accepted() {
        let inst = parse_instance(r#"{"elements": [3, 5], "target": 8}"#).unwrap();
        assert_eq!(inst.elements(), &[3, 5]);
        assert_eq!(inst.target(), Some(8));
        let inst = parse_instance(r#"{"elements": [1]}"#).unwrap();
        assert_eq!(inst.target(), None);
    }

    #[test]
    fn empty_instance_is_valid() {
        let inst = parse_instance("0\n-\n\n").unwrap();
        assert_eq!(inst.n(), 0);
        assert_eq!(inst.total(), 0);
    }
}
