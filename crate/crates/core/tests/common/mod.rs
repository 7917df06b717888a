//! Brute-force oracles shared by the integration and acceptance targets.
//! They work on raw bitmask rows and never call the closed forms.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stopset::BinaryMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Every row meets `x` in a number of positions other than one.
pub fn stops(rows: &[u32], x: u32) -> bool {
    rows.iter().all(|&h| (h & x).count_ones() != 1)
}

fn add_counts(rows: &[u32], n: usize, acc: &mut [u64]) {
    for x in 0u32..1 << n {
        if stops(rows, x) {
            acc[x.count_ones() as usize] += 1;
        }
    }
}

fn averaged(counts: &[u64], size: u64) -> Vec<BigRational> {
    counts
        .iter()
        .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(size)))
        .collect()
}

pub fn weight_rows(n: usize, r: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|x| x.count_ones() as usize == r).collect()
}

/// Average SS counts over every `m`-tuple drawn from `choices`, each tuple
/// turned into the rows actually checked by `expand`.
pub fn tuple_average(m: usize, n: usize, choices: &[u32], expand: impl Fn(&[u32]) -> Vec<u32>) -> Vec<BigRational> {
    let k = choices.len() as u64;
    let size = k.pow(m as u32);
    let mut counts = vec![0u64; n + 1];
    let mut picked = vec![0u32; m];
    for idx in 0..size {
        let mut t = idx;
        for p in picked.iter_mut() {
            *p = choices[(t % k) as usize];
            t /= k;
        }
        add_counts(&expand(&picked), n, &mut counts);
    }
    averaged(&counts, size)
}

pub fn random_ensemble(m: usize, n: usize) -> Vec<BigRational> {
    let all: Vec<u32> = (0u32..1 << n).collect();
    tuple_average(m, n, &all, |r| r.to_vec())
}

pub fn const_row_ensemble(m: usize, n: usize, r: usize) -> Vec<BigRational> {
    tuple_average(m, n, &weight_rows(n, r), |r| r.to_vec())
}

/// Each consecutive pair of rows replaced by `(a, b, a ^ b)`.
pub fn pair_extend(rows: &[u32]) -> Vec<u32> {
    rows.chunks(2).flat_map(|p| [p[0], p[1], p[0] ^ p[1]]).collect()
}

pub fn redundant_random_l2_ensemble(m: usize, n: usize) -> Vec<BigRational> {
    let all: Vec<u32> = (0u32..1 << n).collect();
    tuple_average(m, n, &all, pair_extend)
}

pub fn redundant_const_row_l2_ensemble(m: usize, n: usize, r: usize) -> Vec<BigRational> {
    tuple_average(m, n, &weight_rows(n, r), pair_extend)
}

/// Average SS counts of the socket-permutation bipartite ensemble: every
/// `(nc)!` wiring, a set stopping when no check receives exactly one edge.
pub fn bipartite_ensemble(n: usize, c: usize, d: usize) -> Vec<BigRational> {
    let edges = n * c;
    let checks = edges / d;
    let mut perm: Vec<usize> = (0..edges).collect();
    let mut counts = vec![0u64; n + 1];
    let mut total = 0u64;
    let mut tally = vec![0u32; checks];
    let mut visit = |perm: &[usize]| {
        total += 1;
        for set in 0u32..1 << n {
            tally.iter_mut().for_each(|t| *t = 0);
            for v in (0..n).filter(|v| set >> v & 1 == 1) {
                for e in v * c..(v + 1) * c {
                    tally[perm[e] / d] += 1;
                }
            }
            if tally.iter().all(|&t| t != 1) {
                counts[set.count_ones() as usize] += 1;
            }
        }
    };
    // Heap's algorithm.
    let mut stack = vec![0usize; edges];
    visit(&perm);
    let mut i = 0;
    while i < edges {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            visit(&perm);
            stack[i] += 1;
            i = 0;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    averaged(&counts, total)
}

/// Exact first and second moments of `A_w`, the number of nonzero messages
/// mapped to weight `w`, over all `K x N` generator matrices.
pub fn moments_brute(k: usize, n: usize) -> (Vec<BigRational>, Vec<BigRational>) {
    let size = 1u64 << (k * n);
    let mut s1 = vec![0u64; n + 1];
    let mut s2 = vec![0u64; n + 1];
    let mask = (1u32 << n) - 1;
    for idx in 0..size {
        let rows: Vec<u32> = (0..k).map(|i| (idx >> (i * n)) as u32 & mask).collect();
        let mut a = vec![0u64; n + 1];
        for u in 1u32..1 << k {
            let cw = (0..k).filter(|i| u >> i & 1 == 1).fold(0, |acc, i| acc ^ rows[i]);
            a[cw.count_ones() as usize] += 1;
        }
        for w in 0..=n {
            s1[w] += a[w];
            s2[w] += a[w] * a[w];
        }
    }
    (averaged(&s1, size), averaged(&s2, size))
}

pub fn to_masks(h: &BinaryMatrix) -> Vec<u32> {
    (0..h.m())
        .map(|i| (0..h.n()).filter(|&j| h.get(i, j)).fold(0, |acc, j| acc | 1 << j))
        .collect()
}

/// Union of every stopping set inside `e` (itself a stopping set).
pub fn max_stopping_subset(rows: &[u32], e: u32) -> u32 {
    let mut union = 0;
    let mut s = e;
    loop {
        if stops(rows, s) {
            union |= s;
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & e;
    }
    union
}

pub fn random_matrix(rng: &mut impl Rng, m: usize, n: usize, density: f64) -> BinaryMatrix {
    BinaryMatrix::from_fn(m, n, |_, _| rng.gen_bool(density)).unwrap()
}
