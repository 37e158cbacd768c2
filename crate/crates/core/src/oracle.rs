//! Brute-force ground truth: full power-set enumeration of sums, lex-minimal
//! masks, per-lane aliased minima, and decision answers.
//!
//! Every result here is computed by walking all `2^n` masks directly, with
//! no shared code path into the column-wise enumerator it is used to verify.

use crate::aliasing::{alias_state, aliased_subset_sum, AliasPair};
use crate::error::{Error, Result};
use crate::instance::subset_sum_over;
use crate::mask::{lex_smaller_raw, IndexMask};
use std::collections::HashMap;

/// Hard cap for plain power-set walks.
pub const ORACLE_MAX_N: usize = 24;
/// Hard cap for aliased walks (four lanes tracked per sum).
pub const ORACLE_MAX_N_ALIASED: usize = 20;

/// Ground-truth enumeration result.
#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Sorted distinct sums.
    pub sums: Vec<u64>,
    /// Lex-minimal mask per sum.
    pub canonical: HashMap<u64, IndexMask>,
    /// Lex-minimal mask per (aliased sum, lane); present for aliased walks.
    pub lane_canonical: Option<HashMap<(u64, u8), IndexMask>>,
}

impl OracleResult {
    pub fn u(&self) -> u64 {
        self.sums.len() as u64
    }

    pub fn contains(&self, sum: u64) -> bool {
        self.sums.binary_search(&sum).is_ok()
    }
}

/// All distinct subset sums of `elements` with lex-minimal masks.
pub fn brute_sigma(elements: &[u64]) -> Result<OracleResult> {
    let n = elements.len();
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: ORACLE_MAX_N,
        });
    }
    let mut canonical: HashMap<u64, u64> = HashMap::new();
    for bits in 0..(1u64 << n) {
        let sum = subset_sum_over(elements, bits);
        match canonical.get_mut(&sum) {
            None => {
                canonical.insert(sum, bits);
            }
            Some(best) => {
                if lex_smaller_raw(bits, *best) {
                    *best = bits;
                }
            }
        }
    }
    let mut sums: Vec<u64> = canonical.keys().copied().collect();
    sums.sort_unstable();
    let canonical = canonical
        .into_iter()
        .map(|(s, bits)| (s, IndexMask::from_bits(bits, n)))
        .collect();
    Ok(OracleResult {
        sums,
        canonical,
        lane_canonical: None,
    })
}

/// Whether some submultiset of `elements` sums to `target`.
pub fn brute_decide(elements: &[u64], target: u64) -> Result<bool> {
    Ok(brute_sigma(elements)?.contains(target))
}

/// All distinct *aliased* subset sums under `pair`, with lex-minimal masks
/// per (sum, lane). With no pair this is `brute_sigma` on a single lane.
pub fn brute_alias(elements: &[u64], pair: Option<&AliasPair>) -> Result<OracleResult> {
    let n = elements.len();
    if n > ORACLE_MAX_N_ALIASED {
        return Err(Error::TooLarge {
            n,
            max: ORACLE_MAX_N_ALIASED,
        });
    }
    let mut lane_canonical: HashMap<(u64, u8), u64> = HashMap::new();
    for bits in 0..(1u64 << n) {
        let sum = aliased_subset_sum(elements, bits, pair);
        let lane = pair.map_or(0, |p| alias_state(bits, p));
        match lane_canonical.get_mut(&(sum, lane)) {
            None => {
                lane_canonical.insert((sum, lane), bits);
            }
            Some(best) => {
                if lex_smaller_raw(bits, *best) {
                    *best = bits;
                }
            }
        }
    }
    let mut sums: Vec<u64> = lane_canonical.keys().map(|&(s, _)| s).collect();
    sums.sort_unstable();
    sums.dedup();
    // Overall lex-min per sum, across lanes.
    let mut canonical: HashMap<u64, IndexMask> = HashMap::new();
    for (&(sum, _), &bits) in &lane_canonical {
        let mask = IndexMask::from_bits(bits, n);
        canonical
            .entry(sum)
            .and_modify(|best| {
                if lex_smaller_raw(bits, best.bits()) {
                    *best = mask;
                }
            })
            .or_insert(mask);
    }
    let lane_canonical = lane_canonical
        .into_iter()
        .map(|(key, bits)| (key, IndexMask::from_bits(bits, n)))
        .collect();
    Ok(OracleResult {
        sums,
        canonical,
        lane_canonical: Some(lane_canonical),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_of_small_sets() {
        let r = brute_sigma(&[1, 2, 3]).unwrap();
        assert_eq!(r.sums, vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(r.u(), 7);

        let r = brute_sigma(&[]).unwrap();
        assert_eq!(r.sums, vec![0]);

        let r = brute_sigma(&[1, 1]).unwrap();
        assert_eq!(r.sums, vec![0, 1, 2]);
        assert_eq!(r.u(), 3);
    }

    #[test]
    fn closed_forms_validate_the_oracle() {
        // All-ones: U = n + 1.
        let r = brute_sigma(&[1; 9]).unwrap();
        assert_eq!(r.u(), 10);
        // Superincreasing: collision-free, U = 2^n.
        let powers: Vec<u64> = (0..10).map(|i| 1 << i).collect();
        assert_eq!(brute_sigma(&powers).unwrap().u(), 1 << 10);
        // One large element over a run of ones: U = 2n.
        let mut gap: Vec<u64> = vec![1; 9];
        gap.push(1 << 10);
        assert_eq!(brute_sigma(&gap).unwrap().u(), 20);
    }

    #[test]
    fn canonical_masks_sum_to_their_key() {
        let elements = [4u64, 2, 7, 2, 5];
        let r = brute_sigma(&elements).unwrap();
        for (&sum, mask) in &r.canonical {
            assert_eq!(subset_sum_over(&elements, mask.bits()), sum);
        }
    }

    #[test]
    fn decide_examples() {
        assert!(brute_decide(&[3, 5], 8).unwrap());
        assert!(!brute_decide(&[3, 5], 4).unwrap());
        assert!(brute_decide(&[9, 12, 4], 0).unwrap());
    }

    #[test]
    fn rejects_oversized_sets() {
        assert!(matches!(
            brute_sigma(&[1; 25]),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn aliased_walk_on_two_elements() {
        let pair = AliasPair::new(0, 1, 1, 2).unwrap();
        let r = brute_alias(&[1, 2], Some(&pair)).unwrap();
        // Masks map to aliased sums 0, 1, 1, 2.
        assert_eq!(r.sums, vec![0, 1, 2]);
        let lanes = r.lane_canonical.unwrap();
        assert_eq!(lanes[&(0, 0)].bits(), 0b00);
        assert_eq!(lanes[&(1, 1)].bits(), 0b01);
        assert_eq!(lanes[&(1, 2)].bits(), 0b10);
        assert_eq!(lanes[&(2, 3)].bits(), 0b11);
    }

    #[test]
    fn aliased_walk_superincreasing_reaches_reduction_bound() {
        let pair = AliasPair::new(0, 1, 1, 2).unwrap();
        let r = brute_alias(&[1, 2, 4, 8], Some(&pair)).unwrap();
        assert_eq!(r.u(), 12); // 3/4 of 2^4
    }

    #[test]
    fn no_pair_matches_plain_sigma() {
        let elements = [3u64, 1, 4, 1, 5];
        let plain = brute_sigma(&elements).unwrap();
        let aliased = brute_alias(&elements, None).unwrap();
        assert_eq!(plain.sums, aliased.sums);
    }
}
