//! Exact average stopping-set weight distributions of matrix ensembles.
//!
//! Every closed form is evaluated in arbitrary-precision rational arithmetic;
//! floating views are derived from the exact values afterwards.

mod bounds;
mod closed;
mod ensemble;
mod moments;
mod typical;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::bigmath::{log2_rational, rational_to_f64};
use crate::error::{invalid, Result};

pub use bounds::bounds_redundant_random;
pub use closed::{
    avg_ss_bipartite, avg_ss_const_row, avg_ss_random, avg_ss_redundant_const_row_l2, avg_ss_redundant_random_exact,
    avg_ss_redundant_random_l2, bipartite_entry, const_row_entry, random_entry, redundant_const_row_l2_entry,
    redundant_random_exact_entry, redundant_random_l2_entry,
};
pub use ensemble::EnsembleSpec;
pub use moments::{moment1_aw, moment2_aw};
pub use typical::{
    max_typical_bipartite, max_typical_const_row, typical_stopping_distance, typical_stopping_distance_lazy,
    TypicalDistance,
};

/// Exact lower and upper bound on one quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundPair {
    pub lower: BigRational,
    pub upper: BigRational,
}

impl BoundPair {
    pub fn new(lower: BigRational, upper: BigRational) -> Result<Self> {
        if lower > upper {
            return Err(invalid("lower bound exceeds upper bound"));
        }
        Ok(Self { lower, upper })
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lower <= v && v <= &self.upper
    }
}

impl Serialize for BoundPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Side {
            numerator: String,
            denominator: String,
            value: f64,
            log2: f64,
        }
        let side = |r: &BigRational| Side {
            numerator: r.numer().to_string(),
            denominator: r.denom().to_string(),
            value: rational_to_f64(r),
            log2: log2_rational(r),
        };
        #[derive(Serialize)]
        struct Repr {
            lower: Side,
            upper: Side,
        }
        Repr {
            lower: side(&self.lower),
            upper: side(&self.upper),
        }
        .serialize(s)
    }
}
