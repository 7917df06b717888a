mod common;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use stopset::becsim::{
    block_error_exact, block_error_exact_f64, block_error_monte_carlo, peel_decode, sample_erasures,
    simulate_failures, ErasurePattern, PeelingDecoder,
};
use stopset::gf2core::{is_stopping_set, redundant_extend};
use stopset::SupportSet;

fn mask_of(set: &SupportSet) -> u32 {
    set.indices().iter().fold(0, |acc, &i| acc | 1 << (i - 1))
}

#[test]
fn peeling_fails_iff_stopping_set_inside() {
    let mut rng = common::rng(11);
    for _ in 0..150 {
        let n = rng.gen_range(1..=12);
        let m = rng.gen_range(1..=8);
        let density = rng.gen_range(0.15..0.7);
        let h = common::random_matrix(&mut rng, m, n, density);
        let rows = common::to_masks(&h);
        let decoder = PeelingDecoder::new(&h);
        for e in 0u32..1 << n {
            let pattern = ErasurePattern::from_mask(&(0..n).map(|j| e >> j & 1 == 1).collect::<Vec<_>>());
            let out = decoder.decode(&pattern).unwrap();
            let maximal = common::max_stopping_subset(&rows, e);
            assert_eq!(out.success, maximal == 0);
            assert_eq!(mask_of(&out.residual), maximal);
            assert!(is_stopping_set(&h, &out.residual));
        }
    }
}

#[test]
fn residual_independent_of_row_order() {
    let mut rng = common::rng(12);
    for _ in 0..100 {
        let (m, n) = (rng.gen_range(2..=10), rng.gen_range(4..=14));
        let h = common::random_matrix(&mut rng, m, n, 0.3);
        let decoder = PeelingDecoder::new(&h);
        let mut order: Vec<usize> = (0..m).collect();
        for _ in 0..20 {
            let erased: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            let mut reference = erased.clone();
            let ok = decoder.peel_mask(&mut reference);
            order.shuffle(&mut rng);
            let mut shuffled = erased.clone();
            assert_eq!(decoder.peel_mask_ordered(&mut shuffled, &order), ok);
            assert_eq!(shuffled, reference);
        }
    }
}

#[test]
fn extension_failures_imply_base_failures() {
    let mut rng = common::rng(13);
    let h = common::random_matrix(&mut rng, 12, 24, 0.25);
    let exts: Vec<_> = [1, 2, 3].iter().map(|&l| redundant_extend(&h, l).unwrap()).collect();
    let decoders: Vec<_> = exts.iter().map(PeelingDecoder::new).collect();
    let refs: Vec<&PeelingDecoder> = decoders.iter().collect();
    for eps in [0.1, 0.3, 0.5] {
        let fails = simulate_failures(&refs, eps, 3000, 77).unwrap();
        for ((&f1, &f2), &f3) in fails[0].iter().zip(&fails[1]).zip(&fails[2]) {
            assert!(!f2 || f1);
            assert!(!f3 || f1);
        }
    }
}

#[test]
fn monte_carlo_tracks_exact() {
    let mut rng = common::rng(14);
    for trial in 0..3 {
        let h = common::random_matrix(&mut rng, 7, 15, 0.3);
        for eps in [0.2, 0.4] {
            let exact = block_error_exact_f64(&h, eps).unwrap();
            let sim = block_error_monte_carlo(&h, eps, 20_000, 1000 + trial).unwrap();
            let (lo, hi) = sim.wilson(3.0);
            assert!(lo <= exact && exact <= hi, "eps={eps} exact={exact} sim={sim:?}");
            assert!(sim.ci95.0 <= sim.estimate && sim.estimate <= sim.ci95.1);
        }
    }
}

#[test]
fn exact_matches_float_and_edges() {
    let mut rng = common::rng(15);
    let h = common::random_matrix(&mut rng, 5, 10, 0.4);
    let third = BigRational::new(1.into(), 3.into());
    let exact = block_error_exact(&h, &third).unwrap();
    let float = block_error_exact_f64(&h, 1.0 / 3.0).unwrap();
    assert!((stopset::bigmath::rational_to_f64(&exact) - float).abs() < 1e-12);
    let id = stopset::BinaryMatrix::from_fn(6, 6, |i, j| i == j).unwrap();
    assert_eq!(block_error_exact_f64(&id, 0.7).unwrap(), 0.0);
}

#[test]
fn sampling_is_deterministic() {
    let a = sample_erasures(64, 0.37, 5).unwrap();
    assert_eq!(a, sample_erasures(64, 0.37, 5).unwrap());
    assert_ne!(a, sample_erasures(64, 0.37, 6).unwrap());
    let e = SupportSet::new(vec![2, 3, 4], 4).unwrap();
    let h = stopset::BinaryMatrix::from_rows(&[[0u8, 1, 1, 1], [0, 1, 1, 0], [1, 0, 1, 1]]).unwrap();
    assert!(!peel_decode(&h, &ErasurePattern::new(4, e).unwrap()).unwrap().success);
}
