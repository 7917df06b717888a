use stopset::asymptotics::{
    binary_entropy, critical_exponent_bipartite, critical_exponent_bipartite_bits, critical_exponent_bounds,
    finite_rate_const_row, finite_rate_random, growth_rate_bipartite, growth_rate_const_row, growth_rate_random,
    max_beta_over_c, sigma_bounds, solve_x0,
};

fn grid() -> impl Iterator<Item = f64> {
    (1..200).map(|i| i as f64 / 200.0)
}

#[test]
fn curves_stay_below_entropy() {
    for ell in grid() {
        let h = binary_entropy(ell).unwrap();
        assert!(growth_rate_random(ell).unwrap() <= h + 1e-9);
        for r in [2, 3, 6, 15, 40] {
            for rate in [0.25, 0.5, 0.75] {
                assert!(growth_rate_const_row(ell, rate, r).unwrap() <= h + 1e-9);
            }
        }
        for (c, d) in [(3, 6), (4, 8), (7, 14), (9, 36), (3, 4)] {
            assert!(growth_rate_bipartite(ell, c, d).unwrap().bits <= h + 1e-9, "ell={ell} c={c} d={d}");
        }
        for (rate, mu) in [(0.5, 0.5), (0.5, 0.1), (0.25, 0.3)] {
            let s = sigma_bounds(ell, rate, mu).unwrap();
            assert!(s.upper <= h + 1e-9);
        }
    }
}

#[test]
fn sigma_lower_below_upper() {
    for ell in (0..=100).map(|i| i as f64 / 100.0) {
        for rate in [0.1, 0.3, 0.5, 0.7, 0.9] {
            for k in 1..=10 {
                let mu = (1.0 - rate) * k as f64 / 10.0;
                let s = sigma_bounds(ell, rate, mu).unwrap();
                assert!(s.lower <= s.upper + 1e-15);
                if ell > mu {
                    assert_eq!(s.lower, s.upper);
                }
            }
        }
    }
    let s = sigma_bounds(0.3, 0.5, 0.3).unwrap();
    assert!((s.upper - binary_entropy(0.3).unwrap()).abs() < 1e-15);
    let s = sigma_bounds(0.0, 0.5, 0.25).unwrap();
    assert_eq!((s.lower, s.upper), (-0.5, -0.5));
    assert!(!s.non_integral_blocks);
    assert!(sigma_bounds(0.2, 0.5, 0.3).unwrap().non_integral_blocks);
}

#[test]
fn finite_length_rates_converge() {
    for (ell, rate) in [(0.3, 0.5), (0.2, 0.5), (0.4, 0.25)] {
        let target = growth_rate_random(ell).unwrap();
        let gap = |n: usize| {
            let m = ((1.0 - rate) * n as f64).round() as usize;
            (finite_rate_random(m, n, (ell * n as f64).round() as usize) - target).abs()
        };
        assert!(gap(2000) < gap(500), "random ell={ell}");
        assert!(gap(2000) < 0.01);
    }
    for (ell, r) in [(0.2, 15), (0.1, 6), (0.3, 4)] {
        let target = growth_rate_const_row(ell, 0.5, r).unwrap();
        let gap = |n: usize| (finite_rate_const_row(n / 2, n, r, (ell * n as f64).round() as usize) - target).abs();
        assert!(gap(2000) < gap(500), "const row ell={ell} r={r}");
        assert!(gap(2000) < 0.01);
    }
}

#[test]
fn x0_solves_its_equation() {
    for d in [2, 3, 6, 14, 36, 80] {
        let mut prev = 0.0;
        for ell in grid() {
            let r = solve_x0(ell, d).unwrap();
            assert!(r.residual <= 1e-12, "ell={ell} d={d}");
            assert!(r.x > prev);
            prev = r.x;
        }
    }
}

#[test]
fn bipartite_rate_near_full_weight() {
    let g = growth_rate_bipartite(0.99, 3, 6).unwrap();
    assert!(g.nats > 0.0);
    assert!((g.bits - g.nats / std::f64::consts::LN_2).abs() < 1e-12);
}

#[test]
fn exponents_are_base_independent_and_precise() {
    for (c, d) in [(3, 6), (4, 8), (7, 14), (9, 36), (10, 40), (5, 20)] {
        let nats = critical_exponent_bipartite(c, d).unwrap();
        let bits = critical_exponent_bipartite_bits(c, d).unwrap();
        assert!((nats.value - bits.value).abs() < 1e-11, "c={c} d={d}");
        assert!(nats.residual <= 1e-10);
        let below = growth_rate_bipartite(nats.value - 1e-6, c, d).unwrap().nats;
        let above = growth_rate_bipartite(nats.value + 1e-6, c, d).unwrap().nats;
        assert!(below < 0.0 && above > 0.0);
    }
    assert!(critical_exponent_bipartite(3, 6).unwrap().value < critical_exponent_bipartite(7, 14).unwrap().value);
}

#[test]
fn alpha_bounds_ordered() {
    for rate in [0.2, 0.5, 0.8] {
        for k in 1..=4 {
            let mu = (1.0 - rate) / k as f64;
            let (lo, hi) = critical_exponent_bounds(rate, mu).unwrap();
            assert!(lo.value <= hi.value);
            assert!(lo.residual <= 1e-10 && hi.residual <= 1e-10);
        }
    }
    let (_, hi) = critical_exponent_bounds(0.5, 0.5).unwrap();
    assert!((hi.value - 0.1100).abs() < 1e-4);
}

#[test]
fn singleton_beta_scan() {
    let best = max_beta_over_c(0.5, 5, 5).unwrap();
    assert_eq!((best.c, best.d), (5, 10));
    assert!(max_beta_over_c(0.5, 6, 5).is_err());
}
