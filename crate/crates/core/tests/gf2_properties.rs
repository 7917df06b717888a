mod common;

use proptest::prelude::*;
use stopset::gf2core::{
    codeword_weight_counts, enumerate_stopping_sets, is_stopping_set, is_stopping_vector, min_distance, parse_alist,
    parse_text, redundant_extend, ss_weight_distribution_exhaustive, stopping_distance, to_alist, to_text,
};
use stopset::{BinaryMatrix, SupportSet};

fn matrix(max_m: usize, max_n: usize) -> impl Strategy<Value = BinaryMatrix> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        proptest::collection::vec(any::<bool>(), m * n)
            .prop_map(move |bits| BinaryMatrix::from_fn(m, n, |i, j| bits[i * n + j]).unwrap())
    })
}

/// Matrix whose row count is a multiple of the returned extension degree.
fn extendable(max_n: usize) -> impl Strategy<Value = (BinaryMatrix, usize)> {
    (1usize..=3, 1usize..=3, 1..=max_n).prop_flat_map(|(l, blocks, n)| {
        let m = l * blocks;
        proptest::collection::vec(any::<bool>(), m * n)
            .prop_map(move |bits| (BinaryMatrix::from_fn(m, n, |i, j| bits[i * n + j]).unwrap(), l))
    })
}

fn bits(x: u32, n: usize) -> Vec<bool> {
    (0..n).map(|j| x >> j & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extension_never_adds_stopping_sets((h, l) in extendable(10)) {
        let ext = redundant_extend(&h, l).unwrap();
        prop_assert_eq!(ext.m(), (h.m() / l) * ((1 << l) - 1));
        for x in 0u32..1 << h.n() {
            let x = bits(x, h.n());
            if is_stopping_vector(&ext, &x).unwrap() {
                prop_assert!(is_stopping_vector(&h, &x).unwrap());
            }
        }
    }

    #[test]
    fn extension_keeps_row_space((h, l) in extendable(12)) {
        let ext = redundant_extend(&h, l).unwrap();
        prop_assert!(ext.same_row_space(&h));
        prop_assert_eq!(ext.reduced_row_echelon(), h.reduced_row_echelon());
    }

    #[test]
    fn enumeration_matches_exhaustive(h in matrix(6, 12)) {
        let dist = ss_weight_distribution_exhaustive(&h).unwrap();
        let counts = dist.as_counts().unwrap();
        prop_assert_eq!(counts[0], 1);
        let sets = enumerate_stopping_sets(&h, h.n()).unwrap();
        let mut per_weight = vec![0u64; h.n() + 1];
        for s in &sets {
            prop_assert!(!s.is_empty());
            prop_assert!(is_stopping_set(&h, s));
            per_weight[s.len()] += 1;
        }
        prop_assert_eq!(&per_weight[1..], &counts[1..]);
        // Independent bitmask oracle.
        let rows = common::to_masks(&h);
        let mut oracle = vec![0u64; h.n() + 1];
        for x in 0u32..1 << h.n() {
            if common::stops(&rows, x) {
                oracle[x.count_ones() as usize] += 1;
            }
        }
        prop_assert_eq!(oracle, counts);
    }

    #[test]
    fn enumeration_is_sorted_and_distance_consistent(h in matrix(5, 10)) {
        let sets = enumerate_stopping_sets(&h, h.n()).unwrap();
        for pair in sets.windows(2) {
            prop_assert!((pair[0].len(), pair[0].indices()) < (pair[1].len(), pair[1].indices()));
        }
        let report = stopping_distance(&h, h.n()).unwrap();
        prop_assert_eq!(report.distance, sets.first().map(SupportSet::len));
        let mult = sets.iter().filter(|s| Some(s.len()) == report.distance).count() as u64;
        prop_assert_eq!(report.multiplicity, mult);
    }

    #[test]
    fn dmin_two_iff_no_weight_one_codeword(g in matrix(5, 8)) {
        let counts = codeword_weight_counts(&g).unwrap();
        let d = min_distance(&g).unwrap();
        prop_assert_eq!(d.is_none_or(|d| d >= 2), counts[1] == 0);
    }

    #[test]
    fn text_and_alist_round_trip(h in matrix(8, 16)) {
        prop_assert_eq!(parse_text(&to_text(&h)).unwrap(), h.clone());
        prop_assert_eq!(parse_alist(&to_alist(&h)).unwrap(), h);
    }
}

#[test]
fn example3_block_layout() {
    let h = BinaryMatrix::from_rows(&[[1u8, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]]).unwrap();
    let ext = redundant_extend(&h, 2).unwrap();
    let expected = BinaryMatrix::from_rows(&[
        [1u8, 1, 0, 0],
        [0, 1, 1, 0],
        [1, 0, 1, 0],
        [0, 0, 1, 1],
        [1, 0, 0, 1],
        [1, 0, 1, 0],
    ])
    .unwrap();
    assert_eq!(ext, expected);
    assert_eq!(redundant_extend(&h, 1).unwrap(), h);
    assert!(redundant_extend(&h, 3).is_err());
}

#[test]
fn distmult_row_count() {
    let h = common::random_matrix(&mut common::rng(5), 50, 100, 0.5);
    assert_eq!(redundant_extend(&h, 5).unwrap().m(), 310);
    assert_eq!(redundant_extend(&h, 2).unwrap().m(), 75);
}
