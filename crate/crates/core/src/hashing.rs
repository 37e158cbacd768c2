//! Polynomial hashing of mask prefixes over the field GF(2^61 - 1).
//!
//! The hash of the first `L` bits of a mask is `sum B^i` over the set bits
//! `i < L`, with the base `B` drawn from the seed. Equal prefixes hash
//! equal, and setting one new bit updates the full-mask hash in constant
//! time, which is what the randomized enumerator relies on. The first index
//! at which two masks diverge is located by binary search over prefix
//! hashes.

use crate::mask::IndexMask;

/// Field modulus, the Mersenne prime 2^61 - 1.
pub const HASH_PRIME: u64 = (1 << 61) - 1;

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    let t = a as u128 * b as u128;
    reduce(((t >> 61) + (t & HASH_PRIME as u128)) as u64)
}

#[inline]
fn add_mod(a: u64, b: u64) -> u64 {
    reduce(a + b)
}

#[inline]
fn reduce(x: u64) -> u64 {
    debug_assert!(x < 2 * HASH_PRIME);
    if x >= HASH_PRIME {
        x - HASH_PRIME
    } else {
        x
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Seeded hasher for masks up to a fixed width; powers of the base are
/// precomputed once per enumeration run.
#[derive(Clone, Debug)]
pub struct MaskHasher {
    pow: Vec<u64>,
}

impl MaskHasher {
    pub fn new(seed: u64, width: usize) -> Self {
        let base = 2 + splitmix64(seed) % (HASH_PRIME - 3);
        let mut pow = Vec::with_capacity(width + 1);
        let mut p = 1u64;
        for _ in 0..=width {
            pow.push(p);
            p = mul_mod(p, base);
        }
        MaskHasher { pow }
    }

    /// Hash of the empty prefix.
    pub fn empty(&self) -> u64 {
        0
    }

    /// Full-mask hash after setting `index`; the bit must not already
    /// contribute to `hash`.
    #[inline]
    pub fn append(&self, hash: u64, index: usize) -> u64 {
        add_mod(hash, self.pow[index])
    }

    /// Hash of the first `prefix_len` bits of `mask_bits`.
    pub fn prefix_hash(&self, mask_bits: u64, prefix_len: usize) -> u64 {
        let masked = if prefix_len >= 64 {
            mask_bits
        } else {
            mask_bits & ((1u64 << prefix_len) - 1)
        };
        let mut rest = masked;
        let mut h = 0u64;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            h = add_mod(h, self.pow[i]);
            rest &= rest - 1;
        }
        h
    }

    /// Binary search over prefix hashes for the first index where the masks
    /// differ. `a_hash`/`b_hash` are the full-mask hashes; returns `None`
    /// when they are equal (equal masks, up to hash collision).
    pub fn first_divergence(
        &self,
        a_bits: u64,
        a_hash: u64,
        b_bits: u64,
        b_hash: u64,
        width: usize,
    ) -> Option<usize> {
        if a_hash == b_hash {
            return None;
        }
        // Invariant: prefixes of length `lo` hash equal, of length `hi` differ.
        let mut lo = 0usize;
        let mut hi = width;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.prefix_hash(a_bits, mid) == self.prefix_hash(b_bits, mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(hi - 1)
    }
}

/// Standalone prefix-hash operation: hash of the first `prefix_len` bits of
/// `mask` under the base derived from `seed`.
pub fn mask_hash(mask: IndexMask, prefix_len: usize, seed: u64) -> u64 {
    assert!(prefix_len <= mask.width(), "prefix longer than mask width");
    MaskHasher::new(seed, mask.width()).prefix_hash(mask.bits(), prefix_len)
}
