//! Typical stopping distance: where the cumulative average count of nonempty
//! stopping sets first reaches 1.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::EnsembleSpec;
use crate::distribution::WeightDistribution;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypicalDistance {
    /// Largest `s` with `sum_{w=1}^{s-1} S_w < 1`; `n + 1` when the sum never reaches 1.
    pub delta: usize,
    /// `false` when the cumulative sum stayed below 1 through `w = n`.
    pub reached: bool,
}

/// Walks the entries `S_1, S_2, ...` supplied by `entry` and stops at the
/// first weight where the running sum reaches 1.
pub fn typical_stopping_distance_lazy(
    n: usize,
    mut entry: impl FnMut(usize) -> Result<BigRational>,
) -> Result<TypicalDistance> {
    let one = BigRational::one();
    let mut sum = BigRational::zero();
    for w in 1..=n {
        sum += entry(w)?;
        if sum >= one {
            return Ok(TypicalDistance {
                delta: w,
                reached: true,
            });
        }
    }
    Ok(TypicalDistance {
        delta: n + 1,
        reached: false,
    })
}

pub fn typical_stopping_distance(dist: &WeightDistribution) -> Result<TypicalDistance> {
    let stored = dist.len().saturating_sub(1);
    let td = typical_stopping_distance_lazy(stored, |w| Ok(dist.get(w).expect("within stored range").clone()))?;
    if !td.reached && !dist.is_complete() {
        return Err(invalid(format!(
            "distribution stops at w={stored} before the cumulative sum reaches 1"
        )));
    }
    if !td.reached {
        return Ok(TypicalDistance {
            delta: dist.n() + 1,
            reached: false,
        });
    }
    Ok(td)
}

fn spec_distance(spec: EnsembleSpec) -> Result<TypicalDistance> {
    typical_stopping_distance_lazy(spec.n(), |w| spec.entry(w))
}

/// Best row weight for `C_{m,n,r}` over `rs`: `(r, delta)`, ties to the smaller `r`.
pub fn max_typical_const_row(m: usize, n: usize, rs: std::ops::RangeInclusive<usize>) -> Result<(usize, usize)> {
    let results = rs
        .clone()
        .into_par_iter()
        .map(|r| spec_distance(EnsembleSpec::ConstRow { m, n, r }).map(|t| (r, t.delta)))
        .collect::<Result<Vec<_>>>()?;
    best(results)
}

/// Best variable degree for bipartite ensembles with `n` columns and `checks`
/// check nodes (so `d = c n / checks`), over `cs`.
pub fn max_typical_bipartite(
    n: usize,
    checks: usize,
    cs: std::ops::RangeInclusive<usize>,
) -> Result<(usize, usize)> {
    let results = cs
        .into_par_iter()
        .filter(|c| (c * n).is_multiple_of(checks))
        .map(|c| {
            let d = c * n / checks;
            spec_distance(EnsembleSpec::Bipartite { n, c, d }).map(|t| (c, t.delta))
        })
        .collect::<Result<Vec<_>>>()?;
    best(results)
}

fn best(results: Vec<(usize, usize)>) -> Result<(usize, usize)> {
    results
        .into_iter()
        .fold(None, |acc: Option<(usize, usize)>, (p, d)| match acc {
            Some((_, bd)) if bd >= d => acc,
            _ => Some((p, d)),
        })
        .ok_or_else(|| invalid("empty parameter scan"))
}
