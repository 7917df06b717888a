//! `Q_{L,w}` without enumeration.
//!
//! View `G` as `w` columns in `F_2^L`. A nonzero combination `mG` has weight 1
//! exactly when some column lies outside the span of the others (take `m`
//! vanishing on that span but not on the column), so `d_min(G) >= 2` iff no
//! column is a coloop. Stratifying by the span `V` of all columns,
//!
//! `Q_{L,w} = sum_k [L choose k]_2 * N(k, w)`
//!
//! where `N(k, w)` counts coloop-free `w`-tuples spanning `F_2^k`. `N` follows
//! by removing from the spanning count `S(k, w)` the tuples with a nonempty
//! coloop set of size `c`: the other columns span a codimension-`c` subspace
//! without coloops, and the coloops complete it to `F_2^k`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::bigmath::binomial_int;
use crate::error::{invalid, Result};

/// Gaussian binomial `[k choose i]_2`.
pub(crate) fn gaussian_binomial(k: usize, i: usize) -> BigInt {
    if i > k {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..i {
        num *= (BigInt::one() << (k - j)) - 1;
        den *= (BigInt::one() << (j + 1)) - 1;
    }
    num / den
}

/// Number of `w`-tuples of vectors spanning `F_2^k` (q-analogue of surjections).
fn spanning_tuples(k: usize, w: usize) -> BigInt {
    (0..=k)
        .map(|i| {
            let d = k - i;
            let term = gaussian_binomial(k, i) * (BigInt::one() << (d * d.saturating_sub(1) / 2)) * (BigInt::one() << (i * w));
            if d.is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum()
}

struct ColoopFree {
    memo: HashMap<(usize, usize), BigInt>,
}

impl ColoopFree {
    fn get(&mut self, k: usize, w: usize) -> BigInt {
        if k == 0 {
            return BigInt::one();
        }
        if let Some(v) = self.memo.get(&(k, w)) {
            return v.clone();
        }
        let mut total = spanning_tuples(k, w);
        for c in 1..=k.min(w) {
            let completions: BigInt = (0..c)
                .map(|i| (BigInt::one() << k) - (BigInt::one() << (k - c + i)))
                .product();
            total -= binomial_int(w as i64, c as i64) * gaussian_binomial(k, c) * self.get(k - c, w - c) * completions;
        }
        self.memo.insert((k, w), total.clone());
        total
    }
}

/// `Q_{L,w}` from the coloop-free count; agrees with enumeration wherever
/// both run and has no size guard.
pub fn count_dmin_ge2_by_rank(l: usize, w: usize) -> Result<BigUint> {
    if l == 0 || w == 0 {
        return Err(invalid(format!("L and w must be positive (L={l}, w={w})")));
    }
    let mut n = ColoopFree { memo: HashMap::new() };
    let total: BigInt = (0..=l.min(w)).map(|k| gaussian_binomial(l, k) * n.get(k, w)).sum();
    debug_assert!(!total.is_negative());
    Ok(total.to_biguint().expect("count is nonnegative"))
}
