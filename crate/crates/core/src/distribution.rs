use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bigmath::{log2_rational, rational_to_f64};
use crate::error::{invalid, Result};

/// Exact weight distribution `{S_w}` for `w = 0..=n` (or a prefix of it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    values: Vec<BigRational>,
}

impl WeightDistribution {
    /// `values[w]` for `w = 0..values.len()`; at most `n + 1` entries.
    pub fn new(n: usize, values: Vec<BigRational>) -> Result<Self> {
        if values.len() > n + 1 {
            return Err(invalid(format!("{} entries for length {n}", values.len())));
        }
        if values.iter().any(Signed::is_negative) {
            return Err(invalid("negative weight-distribution entry"));
        }
        Ok(Self { n, values })
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        Self {
            n: counts.len() - 1,
            values: counts.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, w: usize) -> Option<&BigRational> {
        self.values.get(w)
    }

    /// Number of stored entries (`n + 1` unless truncated).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.values.len() == self.n + 1
    }

    /// `log2` of each entry, `-inf` where the entry is zero.
    pub fn log2_view(&self) -> Vec<f64> {
        self.values.iter().map(log2_rational).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(rational_to_f64).collect()
    }

    /// Integer counts, when every entry is an integer.
    pub fn as_counts(&self) -> Option<Vec<u64>> {
        self.values
            .iter()
            .map(|v| {
                if v.is_integer() {
                    num_traits::ToPrimitive::to_u64(&v.to_integer())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn rows(&self) -> Vec<DistributionRow> {
        self.values
            .iter()
            .enumerate()
            .map(|(w, v)| DistributionRow {
                w,
                numerator: v.numer().to_string(),
                denominator: v.denom().to_string(),
                log2: log2_rational(v),
            })
            .collect()
    }

    pub fn total(&self) -> BigRational {
        self.values.iter().fold(BigRational::zero(), |acc, v| acc + v)
    }
}

/// One exported line: exact value plus its log2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub w: usize,
    pub numerator: String,
    pub denominator: String,
    pub log2: f64,
}

impl Serialize for WeightDistribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            entries: Vec<DistributionRow>,
        }
        Repr {
            n: self.n,
            entries: self.rows(),
        }
        .serialize(s)
    }
}
