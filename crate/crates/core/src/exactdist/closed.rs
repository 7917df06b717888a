use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bigmath::{binomial_int, pow2_int};
use crate::distribution::WeightDistribution;
use crate::error::{invalid, Error, Result};
use crate::qlwsearch::QTable;

fn rat(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn c(a: usize, b: i64) -> BigInt {
    binomial_int(a as i64, b)
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(invalid(format!("{name} must be positive")));
    }
    Ok(())
}

fn check_w(n: usize, w: usize) -> Result<()> {
    if w > n {
        return Err(invalid(format!("weight {w} exceeds length {n}")));
    }
    Ok(())
}

fn collect(n: usize, entry: impl Fn(usize) -> Result<BigRational> + Sync + Send) -> Result<WeightDistribution> {
    use rayon::prelude::*;
    let values = (0..=n).into_par_iter().map(entry).collect::<Result<Vec<_>>>()?;
    WeightDistribution::new(n, values)
}

/// `C(n,w) (1 - w 2^-w)^m`.
pub fn random_entry(m: usize, n: usize, w: usize) -> Result<BigRational> {
    positive("m", m)?;
    positive("n", n)?;
    check_w(n, w)?;
    let base = rat(pow2_int(w as u64) - w, pow2_int(w as u64));
    Ok(int(c(n, w as i64)) * num_traits::pow(base, m))
}

pub fn avg_ss_random(m: usize, n: usize) -> Result<WeightDistribution> {
    positive("m", m)?;
    collect(n, |w| random_entry(m, n, w))
}

fn check_row_weight(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        return Err(invalid(format!("row weight {r} outside [1, {n}]")));
    }
    Ok(())
}

/// Rows of weight `r` whose inner product with a fixed weight-`w` vector is not 1.
fn const_row_good_rows(n: usize, r: usize, w: usize) -> BigInt {
    c(n, r as i64) - c(n - w, r as i64 - 1) * w
}

/// `C(n,w) (1 - w C(n-w, r-1) / C(n,r))^m`.
pub fn const_row_entry(m: usize, n: usize, r: usize, w: usize) -> Result<BigRational> {
    positive("m", m)?;
    check_row_weight(n, r)?;
    check_w(n, w)?;
    let base = rat(const_row_good_rows(n, r, w), c(n, r as i64));
    Ok(int(c(n, w as i64)) * num_traits::pow(base, m))
}

pub fn avg_ss_const_row(m: usize, n: usize, r: usize) -> Result<WeightDistribution> {
    positive("m", m)?;
    check_row_weight(n, r)?;
    collect(n, |w| const_row_entry(m, n, r, w))
}

fn check_bipartite(n: usize, cdeg: usize, d: usize) -> Result<usize> {
    positive("n", n)?;
    positive("c", cdeg)?;
    positive("d", d)?;
    if !(n * cdeg).is_multiple_of(d) {
        return Err(invalid(format!("d={d} does not divide n*c={}", n * cdeg)));
    }
    Ok(n * cdeg / d)
}

fn poly_mul_truncated(a: &[BigInt], b: &[BigInt], degree: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); (a.len() + b.len() - 1).min(degree + 1)];
    for (i, x) in a.iter().enumerate().take(degree + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(degree + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Coefficients of `((1+x)^d - d x)^checks` up to `x^degree`, by repeated squaring.
fn check_polynomial_power(d: usize, checks: usize, degree: usize) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = (0..=d.min(degree)).map(|k| c(d, k as i64)).collect();
    if base.len() > 1 {
        base[1] -= d;
    }
    let mut acc = vec![BigInt::one()];
    let mut e = checks;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_truncated(&acc, &base, degree);
        }
        e >>= 1;
        if e > 0 {
            base = poly_mul_truncated(&base, &base, degree);
        }
    }
    acc.resize(degree + 1, BigInt::zero());
    acc
}

fn bipartite_from_coef(n: usize, cdeg: usize, w: usize, coef: &BigInt) -> BigRational {
    int(c(n, w as i64)) * rat(coef.clone(), c(n * cdeg, (w * cdeg) as i64))
}

/// `C(n,w) coef[((1+x)^d - dx)^{nc/d}, x^{wc}] / C(nc, wc)`, truncating the
/// polynomial power at degree `wc`.
pub fn bipartite_entry(n: usize, cdeg: usize, d: usize, w: usize) -> Result<BigRational> {
    let checks = check_bipartite(n, cdeg, d)?;
    check_w(n, w)?;
    let degree = w * cdeg;
    let poly = check_polynomial_power(d, checks, degree);
    Ok(bipartite_from_coef(n, cdeg, w, &poly[degree]))
}

pub fn avg_ss_bipartite(n: usize, cdeg: usize, d: usize) -> Result<WeightDistribution> {
    let checks = check_bipartite(n, cdeg, d)?;
    let poly = check_polynomial_power(d, checks, n * cdeg);
    let values = (0..=n).map(|w| bipartite_from_coef(n, cdeg, w, &poly[w * cdeg])).collect();
    WeightDistribution::new(n, values)
}

fn check_even(m: usize) -> Result<()> {
    positive("m", m)?;
    if !m.is_multiple_of(2) {
        return Err(Error::NotDivisible { l: 2, m });
    }
    Ok(())
}

/// Entry for the degree-2 redundant random ensemble. Per two-row block the
/// count of good `(h1, h2)` pairs is `(2^n - w 2^{n-w})^2 - V`; dividing by
/// `2^{2n}` leaves a base that depends on `w` only.
pub fn redundant_random_l2_entry(m: usize, n: usize, w: usize) -> Result<BigRational> {
    check_even(m)?;
    positive("n", n)?;
    check_w(n, w)?;
    if w == 0 {
        return Ok(BigRational::one());
    }
    let sum: BigInt = (2..=w).map(|g| c(w, g as i64) * (w - g)).sum();
    let good = pow2_int(w as u64) - w;
    let base = rat(&good * &good - sum * 2, pow2_int(2 * w as u64));
    Ok(int(c(n, w as i64)) * num_traits::pow(base, m / 2))
}

pub fn avg_ss_redundant_random_l2(m: usize, n: usize) -> Result<WeightDistribution> {
    check_even(m)?;
    collect(n, |w| redundant_random_l2_entry(m, n, w))
}

/// Entry for the degree-2 redundant constant-row-weight ensemble.
pub fn redundant_const_row_l2_entry(m: usize, n: usize, r: usize, w: usize) -> Result<BigRational> {
    check_even(m)?;
    check_row_weight(n, r)?;
    check_w(n, w)?;
    if w == 0 {
        return Ok(BigRational::one());
    }
    let top = (w.min(r) as i64) - 1;
    let v: BigInt = (2..=top)
        .map(|g| c(w, g) * (w as i64 - g) * c(n - w, r as i64 - g - 1) * c(n - w, r as i64 - g))
        .sum::<BigInt>()
        * 2;
    let good = const_row_good_rows(n, r, w);
    let rows = c(n, r as i64);
    let base = rat(&good * &good - v, &rows * &rows);
    Ok(int(c(n, w as i64)) * num_traits::pow(base, m / 2))
}

pub fn avg_ss_redundant_const_row_l2(m: usize, n: usize, r: usize) -> Result<WeightDistribution> {
    check_even(m)?;
    check_row_weight(n, r)?;
    collect(n, |w| redundant_const_row_l2_entry(m, n, r, w))
}

/// `C(n,w) (Q_{L,w} 2^{L(n-w)})^{m/L} / 2^{mn}`, written as
/// `C(n,w) (Q_{L,w} / 2^{Lw})^{m/L}`.
pub fn redundant_random_exact_entry(m: usize, n: usize, l: usize, w: usize, q: &QTable) -> Result<BigRational> {
    positive("n", n)?;
    positive("L", l)?;
    if m == 0 || !m.is_multiple_of(l) {
        return Err(Error::NotDivisible { l, m });
    }
    check_w(n, w)?;
    if w == 0 {
        return Ok(BigRational::one());
    }
    let qv = BigInt::from(q.require(l, w)?.clone());
    let base = rat(qv, pow2_int((l * w) as u64));
    Ok(int(c(n, w as i64)) * num_traits::pow(base, m / l))
}

/// Entries `0..=w_max` (all of them when `w_max` is `None`); `q` must cover
/// every requested weight.
pub fn avg_ss_redundant_random_exact(
    m: usize,
    n: usize,
    l: usize,
    q: &QTable,
    w_max: Option<usize>,
) -> Result<WeightDistribution> {
    let top = w_max.unwrap_or(n).min(n);
    let values = (0..=top)
        .map(|w| redundant_random_exact_entry(m, n, l, w, q))
        .collect::<Result<Vec<_>>>()?;
    WeightDistribution::new(n, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigmath::format_sig;
    use crate::qlwsearch::count_dmin_ge2_by_rank;

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn random_small() {
        let d = avg_ss_random(2, 4).unwrap();
        assert_eq!(d.values(), &[frac(1, 1), frac(1, 1), frac(3, 2), frac(25, 16), frac(9, 16)]);
        assert_eq!(random_entry(1, 3, 1).unwrap(), frac(3, 2));
        assert!(avg_ss_random(0, 3).is_err());
    }

    #[test]
    fn redundant_random_small() {
        let d = avg_ss_redundant_random_l2(2, 4).unwrap();
        assert_eq!(d.values(), &[frac(1, 1), frac(1, 1), frac(3, 2), frac(19, 16), frac(7, 16)]);
        assert_eq!(redundant_random_l2_entry(6, 9, 1).unwrap(), random_entry(6, 9, 1).unwrap());
        assert!(matches!(avg_ss_redundant_random_l2(3, 4), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn const_row_points() {
        assert_eq!(format_sig(&const_row_entry(50, 100, 10, 1).unwrap(), 3), "5.15e-1");
        assert_eq!(format_sig(&const_row_entry(50, 100, 50, 4).unwrap(), 3), "2.23e0");
        assert!(const_row_entry(5, 7, 7, 1).unwrap().is_zero());
        assert!(const_row_entry(5, 7, 8, 1).is_err());
    }

    #[test]
    fn redundant_const_row_points() {
        assert_eq!(format_sig(&redundant_const_row_l2_entry(50, 100, 50, 4).unwrap(), 3), "4.18e-3");
        assert_eq!(format_sig(&redundant_const_row_l2_entry(50, 100, 10, 1).unwrap(), 3), "5.15e-1");
        for (m, n, r) in [(4, 9, 3), (6, 12, 5), (2, 5, 1)] {
            assert_eq!(
                redundant_const_row_l2_entry(m, n, r, 1).unwrap(),
                const_row_entry(m, n, r, 1).unwrap()
            );
        }
    }

    #[test]
    fn bipartite_hand_expansion() {
        // ((1+x)^4 - 4x)^2 = (1 + 6x^2 + 4x^3 + x^4)^2, so the x^2 coefficient is 12.
        let got = bipartite_entry(4, 2, 4, 1).unwrap();
        assert_eq!(got, frac(12 * 4, 28));
        let full = avg_ss_bipartite(4, 2, 4).unwrap();
        assert_eq!(full.get(1).unwrap(), &got);
        assert_eq!(full.get(0).unwrap(), &BigRational::one());
        for w in 0..=4 {
            assert_eq!(full.get(w).unwrap(), &bipartite_entry(4, 2, 4, w).unwrap());
        }
        assert!(avg_ss_bipartite(5, 3, 4).is_err());
    }

    #[test]
    fn exact_redundant_matches_l2_and_l1() {
        let q = crate::qlwsearch::QTable::by_rank(1..=2, 1..=8).unwrap();
        let exact = avg_ss_redundant_random_exact(2, 4, 2, &q, None).unwrap();
        assert_eq!(exact, avg_ss_redundant_random_l2(2, 4).unwrap());
        let l1 = avg_ss_redundant_random_exact(4, 8, 1, &q, None).unwrap();
        assert_eq!(l1, avg_ss_random(4, 8).unwrap());
        let mut partial = crate::qlwsearch::QTable::new();
        partial.insert(5, 1, count_dmin_ge2_by_rank(5, 1).unwrap()).unwrap();
        assert!(matches!(
            avg_ss_redundant_random_exact(50, 100, 5, &partial, Some(2)),
            Err(Error::MissingQ { l: 5, w: 2 })
        ));
    }

    #[test]
    fn exact_redundant_l5_point() {
        let q = crate::qlwsearch::QTable::by_rank([5], 1..=5).unwrap();
        let v = redundant_random_exact_entry(50, 100, 5, 3, &q).unwrap();
        assert_eq!(format_sig(&v, 3), "1.94e-10");
    }
}
