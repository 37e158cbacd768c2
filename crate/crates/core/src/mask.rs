//! Fixed-width index bitmasks and the lexicographic canonical order.
//!
//! A mask identifies a subset by element position: bit `i` set means the
//! element at index `i` is included. Canonicality is decided by scanning
//! indices in ascending order; at the first index where two masks differ,
//! the one *without* the bit is smaller. The empty mask is the global
//! minimum.

use crate::error::{Error, Result};

/// Widest mask supported; one machine word keeps comparisons branch-free.
pub const MAX_WIDTH: usize = 64;

/// A subset of element indices, fixed to the width of its instance or half.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexMask {
    bits: u64,
    width: u8,
}

impl IndexMask {
    /// The empty subset at the given width.
    pub fn empty(width: usize) -> Self {
        assert!(width <= MAX_WIDTH, "mask width over {MAX_WIDTH}");
        IndexMask {
            bits: 0,
            width: width as u8,
        }
    }

    /// Builds a mask from raw bits; bits at or above `width` must be clear.
    pub fn from_bits(bits: u64, width: usize) -> Self {
        assert!(width <= MAX_WIDTH, "mask width over {MAX_WIDTH}");
        debug_assert_eq!(bits & !width_mask(width), 0, "bits outside width");
        IndexMask {
            bits,
            width: width as u8,
        }
    }

    /// The subset containing every index below `width`.
    pub fn full(width: usize) -> Self {
        IndexMask::from_bits(width_mask(width), width)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.width() && self.bits & (1 << index) != 0
    }

    /// A copy with bit `index` set.
    pub fn with_bit(&self, index: usize) -> Self {
        debug_assert!(index < self.width());
        IndexMask {
            bits: self.bits | (1 << index),
            width: self.width,
        }
    }

    /// Cardinality of the represented subset.
    pub fn count(&self) -> u32 {
        self.bits.count_ones()
    }

    /// The complement within this width.
    pub fn complement(&self) -> Self {
        IndexMask {
            bits: !self.bits & width_mask(self.width()),
            width: self.width,
        }
    }

    /// Ascending iterator over the set indices.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Lowercase hex, no prefix; the empty mask prints as `0`.
    pub fn to_hex(&self) -> String {
        format!("{:x}", self.bits)
    }

    pub fn from_hex(text: &str, width: usize) -> Result<Self> {
        let bits = u64::from_str_radix(text, 16)
            .map_err(|e| Error::Parse(format!("bad mask hex {text:?}: {e}")))?;
        if width > MAX_WIDTH || bits & !width_mask(width) != 0 {
            return Err(Error::Parse(format!(
                "mask {text:?} has bits outside width {width}"
            )));
        }
        Ok(IndexMask {
            bits,
            width: width as u8,
        })
    }
}

impl std::fmt::Debug for IndexMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IndexMask({:0width$b})", self.bits, width = self.width())
    }
}

fn width_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// True iff at the first index (ascending) where the masks differ, `a` has
/// the bit clear and `b` has it set; false when they are equal.
pub fn lex_smaller(a: IndexMask, b: IndexMask) -> Result<bool> {
    if a.width != b.width {
        return Err(Error::WidthMismatch {
            left: a.width(),
            right: b.width(),
        });
    }
    Ok(lex_smaller_raw(a.bits, b.bits))
}

/// Width-unchecked form used on hot paths where widths agree by construction.
#[inline]
pub(crate) fn lex_smaller_raw(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    // Lowest differing index decides; the mask missing that bit is smaller.
    diff != 0 && a & (diff & diff.wrapping_neg()) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_prefers_clear_bit_at_first_difference() {
        // a = {2}, b = {0,1}: first difference at index 0, a has it clear.
        let a = IndexMask::from_bits(0b100, 3);
        let b = IndexMask::from_bits(0b011, 3);
        assert!(lex_smaller(a, b).unwrap());
        assert!(!lex_smaller(b, a).unwrap());
    }

    #[test]
    fn lex_equal_masks_compare_false() {
        let a = IndexMask::from_bits(0b101, 3);
        assert!(!lex_smaller(a, a).unwrap());
    }

    #[test]
    fn lex_rejects_width_mismatch() {
        let a = IndexMask::empty(3);
        let b = IndexMask::empty(4);
        assert!(matches!(
            lex_smaller(a, b),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn empty_mask_is_global_minimum() {
        let empty = IndexMask::empty(5);
        for bits in 1..32u64 {
            let m = IndexMask::from_bits(bits, 5);
            assert!(lex_smaller(empty, m).unwrap());
            assert!(!lex_smaller(m, empty).unwrap());
        }
    }

    #[test]
    fn complement_and_count() {
        let m = IndexMask::from_bits(0b0110, 4);
        assert_eq!(m.count(), 2);
        assert_eq!(m.complement().bits(), 0b1001);
        assert_eq!(m.indices().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn hex_round_trip() {
        let m = IndexMask::from_bits(0b1011, 6);
        assert_eq!(m.to_hex(), "b");
        assert_eq!(IndexMask::from_hex("b", 6).unwrap(), m);
        assert!(IndexMask::from_hex("ff", 4).is_err());
    }
}
