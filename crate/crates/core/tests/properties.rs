//! Property tests pinning the crate's cross-module invariants against the
//! brute-force oracle and against algebra.

use proptest::prelude::*;
use subsum_core::{
    alias_state_of, aliased_subset_sum, brute_alias, brute_sigma, corrected_sum,
    enumerate_deterministic, enumerate_randomized, format_certificate, lex_smaller, mask_hash,
    parse_certificate, solve, CertificateProgram, EnumMode, Enumeration, IndexMask, Instance,
    SolveConfig,
};

fn mask_strategy(width: usize) -> impl Strategy<Value = IndexMask> {
    let cap = if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    };
    (0..=cap).prop_map(move |bits| IndexMask::from_bits(bits, width))
}

fn elements_strategy(max_len: usize, max_value: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..=max_value, 0..=max_len)
}

proptest! {
    #[test]
    fn lex_order_is_a_strict_partial_order(
        a in mask_strategy(24),
        b in mask_strategy(24),
        c in mask_strategy(24),
    ) {
        // Irreflexive.
        prop_assert!(!lex_smaller(a, a).unwrap());
        // Antisymmetric.
        if lex_smaller(a, b).unwrap() {
            prop_assert!(!lex_smaller(b, a).unwrap());
        }
        // Transitive.
        if lex_smaller(a, b).unwrap() && lex_smaller(b, c).unwrap() {
            prop_assert!(lex_smaller(a, c).unwrap());
        }
        // Total on distinct masks.
        if a != b {
            prop_assert!(lex_smaller(a, b).unwrap() ^ lex_smaller(b, a).unwrap());
        }
    }

    #[test]
    fn subset_and_complement_cover_the_total(
        elements in elements_strategy(12, 1 << 20),
        bits in any::<u64>(),
    ) {
        let inst = Instance::new(elements, None).unwrap();
        let n = inst.n();
        let cap = if n == 0 { 0 } else { (1u64 << n) - 1 };
        let mask = IndexMask::from_bits(bits & cap, n);
        let direct = inst.subset_sum(mask).unwrap();
        let complement = inst.subset_sum(mask.complement()).unwrap();
        prop_assert_eq!(direct + complement, inst.total());
    }

    #[test]
    fn validation_is_idempotent(elements in elements_strategy(12, 1 << 30)) {
        let once = Instance::new(elements, Some(3)).unwrap();
        let twice = Instance::new(once.elements().to_vec(), once.target()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn enumerator_matches_oracle(elements in elements_strategy(10, 80)) {
        let table = enumerate_deterministic(&elements);
        let oracle = brute_sigma(&elements).unwrap();
        let mut sums: Vec<u64> = table.iter_sums().collect();
        sums.sort_unstable();
        prop_assert_eq!(&sums, &oracle.sums);
        // Canonical masks are the oracle lex minima.
        for (&sum, mask) in &oracle.canonical {
            prop_assert_eq!(table.canonical_mask(sum), Some(*mask));
        }
        // No duplicate emission.
        prop_assert_eq!(table.report().states_created, table.distinct());
        prop_assert!(table.report().within_budget(elements.len()));
    }

    #[test]
    fn randomized_run_agrees_with_deterministic(
        elements in elements_strategy(10, 60),
        seed in any::<u64>(),
    ) {
        let det = enumerate_deterministic(&elements);
        let rand = enumerate_randomized(&elements, seed);
        let mut det_sums: Vec<u64> = det.iter_sums().collect();
        let mut rand_sums: Vec<u64> = rand.iter_sums().collect();
        det_sums.sort_unstable();
        rand_sums.sort_unstable();
        prop_assert_eq!(det_sums, rand_sums);
        for sum in rand.iter_sums() {
            let mask = rand.canonical_mask(sum).unwrap();
            let inst = Instance::new(elements.clone(), None).unwrap();
            prop_assert_eq!(inst.subset_sum(mask).unwrap(), sum);
        }
    }

    #[test]
    fn prefix_hash_ignores_bits_beyond_prefix(
        bits in any::<u64>(),
        extra in any::<u64>(),
        prefix in 0usize..=32,
        seed in any::<u64>(),
    ) {
        let low = bits & ((1u64 << 32) - 1);
        let a = IndexMask::from_bits(low, 64);
        let b = IndexMask::from_bits(low | (extra << 32), 64);
        prop_assert_eq!(mask_hash(a, prefix, seed), mask_hash(b, prefix, seed));
    }

    #[test]
    fn aliased_table_is_lane_sound_and_lane_canonical(
        elements in prop::collection::vec(1u64..50, 2..9),
        seed in any::<u64>(),
    ) {
        prop_assume!(elements.iter().any(|&v| v != elements[0]));
        let i1 = elements.iter().position(|&v| v != elements[0]).unwrap();
        let pair = subsum_core::AliasPair::new(0, i1, elements[0], elements[i1]).unwrap();
        let mode = if seed % 2 == 0 { EnumMode::Deterministic } else { EnumMode::Randomized };
        let table = Enumeration::new(&elements, mode, seed, Some(pair), 0).finish();
        let oracle = brute_alias(&elements, Some(&pair)).unwrap();
        let lanes = oracle.lane_canonical.as_ref().unwrap();

        let mut sums: Vec<u64> = table.iter_sums().collect();
        sums.sort_unstable();
        prop_assert_eq!(&sums, &oracle.sums);
        for (sum, entry) in table.iter_entries() {
            for (lane, mask) in entry.occupied_lanes() {
                // Lane soundness: the mask lives in its own lane.
                prop_assert_eq!(alias_state_of(mask, &pair), lane);
                // The key is the aliased sum of the stored mask.
                prop_assert_eq!(aliased_subset_sum(&elements, mask.bits(), Some(&pair)), sum);
                // Lane canonicality: the per-lane lex minimum.
                prop_assert_eq!(lanes.get(&(sum, lane)), Some(&mask));
                // Corrected sums recover true subset sums.
                let inst = Instance::new(elements.clone(), None).unwrap();
                prop_assert_eq!(
                    corrected_sum(sum, lane, &pair),
                    inst.subset_sum(mask).unwrap()
                );
            }
        }
    }

    #[test]
    fn solve_decision_matches_oracle(
        elements in prop::collection::vec(1u64..40, 1..9),
        target_scale in 0.0f64..1.2,
        aliasing in any::<bool>(),
    ) {
        let total: u64 = elements.iter().sum();
        let target = (total as f64 * target_scale) as u64;
        let inst = Instance::new(elements.clone(), Some(target)).unwrap();
        let config = SolveConfig { aliasing, ..SolveConfig::default() };
        let out = solve(&inst, &config).unwrap();
        prop_assert_eq!(out.decision, subsum_core::brute_decide(&elements, target).unwrap());
        if let Some(witness) = out.witness {
            prop_assert_eq!(inst.subset_sum(witness).unwrap(), target);
        }
    }

    #[test]
    fn certificate_files_round_trip(elements in elements_strategy(9, 100)) {
        let table = enumerate_deterministic(&elements);
        let text = format_certificate(&table);
        let program = parse_certificate(&text).unwrap();
        prop_assert_eq!(&program, &CertificateProgram::from_table(&table));
        // Bit-exact: reparsing what the parsed program came from changes nothing.
        let reparsed = parse_certificate(&text).unwrap();
        prop_assert_eq!(program, reparsed);
    }
}
