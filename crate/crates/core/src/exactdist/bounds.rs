use num_rational::BigRational;
use num_traits::{One, Zero};

use super::BoundPair;
use crate::bigmath::{binomial_int, pow2_int};
use crate::error::{invalid, Error, Result};

/// Moment-method bounds on the average weight-`w` stopping-set count of the
/// degree-`l` redundant random ensemble:
///
/// - lower `C(n,w) max{A^{m/L}, 2^-m}` with `A = max{1 - (2^L - 1) w 2^-w, 0}`
/// - upper `C(n,w) ((1 - w 2^-w) / ((2^L - 1) w 2^-w + 1 - w 2^-w))^{m/L}`
pub fn bounds_redundant_random(m: usize, n: usize, l: usize, w: usize) -> Result<BoundPair> {
    if l == 0 || m == 0 || !m.is_multiple_of(l) {
        return Err(Error::NotDivisible { l, m });
    }
    if w == 0 || w > n {
        return Err(invalid(format!("weight {w} outside [1, {n}]")));
    }
    let blocks = m / l;
    let binom = BigRational::from_integer(binomial_int(n as i64, w as i64));
    let one = BigRational::one();
    let p = BigRational::new(w.into(), pow2_int(w as u64));
    let combos = BigRational::from_integer(pow2_int(l as u64) - 1);
    let a = (&one - &combos * &p).max(BigRational::zero());
    let floor = BigRational::new(1.into(), pow2_int(m as u64));
    let lower = &binom * num_traits::pow(a, blocks).max(floor);
    let b = (&one - &p) / (&combos * &p + &one - &p);
    let upper = &binom * num_traits::pow(b, blocks);
    BoundPair::new(lower, upper)
}
