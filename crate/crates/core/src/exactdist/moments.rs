//! Moments of the codeword weight distribution `A_w(G)` over the random
//! `K x N` generator ensemble.

use num_rational::BigRational;
use num_traits::One;

use crate::bigmath::{binomial_int, pow2_int};
use crate::error::{invalid, Result};

fn check(k: usize, n: usize, w: usize) -> Result<()> {
    if k == 0 || n == 0 || w == 0 || w > n {
        return Err(invalid(format!("need K, N >= 1 and 1 <= w <= N (K={k}, N={n}, w={w})")));
    }
    Ok(())
}

/// `E[A_w] = (2^K - 1) 2^-N C(N, w)`.
pub fn moment1_aw(k: usize, n: usize, w: usize) -> Result<BigRational> {
    check(k, n, w)?;
    Ok(BigRational::new(
        (pow2_int(k as u64) - 1) * binomial_int(n as i64, w as i64),
        pow2_int(n as u64),
    ))
}

/// `E[A_w^2] = E[A_w]^2 + E[A_w] (1 - C(N, w) 2^-N)`.
pub fn moment2_aw(k: usize, n: usize, w: usize) -> Result<BigRational> {
    let m1 = moment1_aw(k, n, w)?;
    let frac = BigRational::new(binomial_int(n as i64, w as i64), pow2_int(n as u64));
    Ok(&m1 * &m1 + &m1 * (BigRational::one() - frac))
}
