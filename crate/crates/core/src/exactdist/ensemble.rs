use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::closed;
use crate::distribution::WeightDistribution;
use crate::error::{invalid, Error, Result};
use crate::qlwsearch::count_dmin_ge2_by_rank;

/// One ensemble family and its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum EnsembleSpec {
    /// All `m x n` binary matrices.
    Random { m: usize, n: usize },
    /// All `m x n` matrices whose rows have weight `r`.
    ConstRow { m: usize, n: usize, r: usize },
    /// Regular bipartite graphs, variable degree `c`, check degree `d`.
    Bipartite { n: usize, c: usize, d: usize },
    /// Redundant extension of degree `l` of the random ensemble.
    RedundantRandom { m: usize, n: usize, l: usize },
    /// Redundant extension of the constant-row-weight ensemble; only `l = 2` has a closed form.
    RedundantConstRow { m: usize, n: usize, r: usize, l: usize },
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        let pos = |name: &str, v: usize| {
            if v == 0 {
                Err(invalid(format!("{name} must be positive")))
            } else {
                Ok(())
            }
        };
        match *self {
            Self::Random { m, n } => {
                pos("m", m)?;
                pos("n", n)
            }
            Self::ConstRow { m, n, r } => {
                pos("m", m)?;
                pos("n", n)?;
                pos("r", r)?;
                if r > n {
                    return Err(invalid(format!("row weight {r} exceeds n={n}")));
                }
                Ok(())
            }
            Self::Bipartite { n, c, d } => {
                pos("n", n)?;
                pos("c", c)?;
                pos("d", d)?;
                if (n * c) % d != 0 {
                    return Err(invalid(format!("d={d} does not divide n*c={}", n * c)));
                }
                Ok(())
            }
            Self::RedundantRandom { m, n, l } => {
                pos("m", m)?;
                pos("n", n)?;
                pos("L", l)?;
                if m % l != 0 {
                    return Err(Error::NotDivisible { l, m });
                }
                Ok(())
            }
            Self::RedundantConstRow { m, n, r, l } => {
                if l != 2 {
                    return Err(invalid(format!(
                        "redundant constant-row ensemble is only available for L=2 (got L={l})"
                    )));
                }
                Self::ConstRow { m, n, r }.validate()?;
                if m % 2 != 0 {
                    return Err(Error::NotDivisible { l, m });
                }
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            Self::Random { n, .. }
            | Self::ConstRow { n, .. }
            | Self::Bipartite { n, .. }
            | Self::RedundantRandom { n, .. }
            | Self::RedundantConstRow { n, .. } => n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Random { .. } => "random",
            Self::ConstRow { .. } => "const_row",
            Self::Bipartite { .. } => "bipartite",
            Self::RedundantRandom { .. } => "redundant_random",
            Self::RedundantConstRow { .. } => "redundant_const_row",
        }
    }

    /// Average number of weight-`w` stopping sets.
    ///
    /// Redundant random ensembles with `L = 2` use the direct pair count;
    /// other degrees take `Q_{L,w}` from the rank-stratified count.
    pub fn entry(&self, w: usize) -> Result<BigRational> {
        self.validate()?;
        match *self {
            Self::Random { m, n } => closed::random_entry(m, n, w),
            Self::ConstRow { m, n, r } => closed::const_row_entry(m, n, r, w),
            Self::Bipartite { n, c, d } => closed::bipartite_entry(n, c, d, w),
            Self::RedundantRandom { m, n, l: 2 } => closed::redundant_random_l2_entry(m, n, w),
            Self::RedundantRandom { m, n, l } => {
                if w == 0 {
                    return Ok(num_traits::One::one());
                }
                let mut q = crate::qlwsearch::QTable::new();
                q.insert(l, w, count_dmin_ge2_by_rank(l, w)?)?;
                closed::redundant_random_exact_entry(m, n, l, w, &q)
            }
            Self::RedundantConstRow { m, n, r, .. } => closed::redundant_const_row_l2_entry(m, n, r, w),
        }
    }

    /// Full distribution `w = 0..=n`.
    pub fn distribution(&self) -> Result<WeightDistribution> {
        self.validate()?;
        match *self {
            Self::Bipartite { n, c, d } => closed::avg_ss_bipartite(n, c, d),
            _ => self.distribution_prefix(self.n()),
        }
    }

    /// Entries `w = 0..=w_max` only.
    pub fn distribution_prefix(&self, w_max: usize) -> Result<WeightDistribution> {
        use rayon::prelude::*;
        self.validate()?;
        let n = self.n();
        let values = (0..=w_max.min(n))
            .into_par_iter()
            .map(|w| self.entry(w))
            .collect::<Result<Vec<_>>>()?;
        WeightDistribution::new(n, values)
    }
}
