//! Counting `L x w` binary matrices whose nonzero row combinations never have
//! weight 1 (minimum distance >= 2 as a generator matrix).

mod rank;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bigmath::{pow2, pow2_int, rational_from_uint};
use crate::error::{invalid, Error, Result};
use crate::exactdist::BoundPair;
use crate::gf2core::{min_distance, BinaryMatrix};

pub use rank::count_dmin_ge2_by_rank;

/// Largest `L * w` accepted by the enumeration paths.
pub const MAX_ENUMERATION_BITS: usize = 30;

fn check_dims(l: usize, w: usize) -> Result<()> {
    if l == 0 || w == 0 {
        return Err(invalid(format!("L and w must be positive (L={l}, w={w})")));
    }
    if l * w > MAX_ENUMERATION_BITS {
        return Err(Error::GuardExceeded {
            what: "L*w",
            value: l * w,
            limit: MAX_ENUMERATION_BITS,
        });
    }
    Ok(())
}

/// Incremental state for Gray-code enumeration: every nonzero row
/// combination of `G`, stored as a `w`-bit mask, plus how many of them have
/// weight exactly 1.
struct Combinations {
    w: usize,
    combos: Vec<u32>,
    weight_one: usize,
    /// For row `i`, the combinations that include it.
    touching: Vec<Vec<usize>>,
}

impl Combinations {
    fn new(l: usize, w: usize) -> Self {
        let touching = (0..l)
            .map(|i| (1..1usize << l).filter(|m| (m >> i) & 1 == 1).collect())
            .collect();
        Self {
            w,
            combos: vec![0; 1 << l],
            weight_one: 0,
            touching,
        }
    }

    /// Loads the matrix whose bit `i * w + j` is entry `(i, j)`.
    fn load(&mut self, pattern: u64) {
        let l = self.touching.len();
        let row = |i: usize| ((pattern >> (i * self.w)) as u32) & ((1u32 << self.w) - 1);
        self.weight_one = 0;
        for m in 1..1usize << l {
            let c = (0..l).filter(|i| (m >> i) & 1 == 1).fold(0, |acc, i| acc ^ row(i));
            self.combos[m] = c;
            if c.count_ones() == 1 {
                self.weight_one += 1;
            }
        }
    }

    #[inline]
    fn flip(&mut self, bit: usize) {
        let (i, j) = (bit / self.w, bit % self.w);
        let mask = 1u32 << j;
        for &m in &self.touching[i] {
            let before = self.combos[m].count_ones() == 1;
            self.combos[m] ^= mask;
            let after = self.combos[m].count_ones() == 1;
            match (before, after) {
                (true, false) => self.weight_one -= 1,
                (false, true) => self.weight_one += 1,
                _ => {}
            }
        }
    }
}

/// Counts good matrices among Gray-code indices `start..end`.
fn count_gray_range(l: usize, w: usize, start: u64, end: u64) -> u64 {
    if start >= end {
        return 0;
    }
    let mut state = Combinations::new(l, w);
    state.load(start ^ (start >> 1));
    let mut count = u64::from(state.weight_one == 0);
    for step in start + 1..end {
        state.flip(step.trailing_zeros() as usize);
        count += u64::from(state.weight_one == 0);
    }
    count
}

/// `Q_{L,w}` by single-threaded Gray-code enumeration of all `2^{Lw}` matrices.
pub fn count_dmin_ge2(l: usize, w: usize) -> Result<u64> {
    check_dims(l, w)?;
    Ok(count_gray_range(l, w, 0, 1u64 << (l * w)))
}

/// Same count with the index range split into `parts` chunks evaluated in parallel.
pub fn count_dmin_ge2_parallel(l: usize, w: usize, parts: usize) -> Result<u64> {
    check_dims(l, w)?;
    let total = 1u64 << (l * w);
    let parts = (parts.max(1) as u64).min(total);
    let chunk = total.div_ceil(parts);
    Ok((0..parts)
        .into_par_iter()
        .map(|p| count_gray_range(l, w, p * chunk, ((p + 1) * chunk).min(total)))
        .sum())
}

/// Reference count: build each matrix and ask for its minimum distance.
pub fn count_dmin_ge2_naive(l: usize, w: usize) -> Result<u64> {
    check_dims(l, w)?;
    let mut count = 0;
    for pattern in 0u64..1 << (l * w) {
        let g = BinaryMatrix::from_fn(l, w, |i, j| (pattern >> (i * w + j)) & 1 == 1)?;
        if min_distance(&g)?.is_none_or(|d| d >= 2) {
            count += 1;
        }
    }
    Ok(count)
}

/// First/second-moment bounds on `Q_{L,w}`.
pub fn bounds_dmin_count(l: usize, w: usize) -> Result<BoundPair> {
    if l == 0 || w == 0 {
        return Err(invalid(format!("L and w must be positive (L={l}, w={w})")));
    }
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    let total = rational_from_uint(pow2((l * w) as u64));
    let one = BigRational::one();
    let p = BigRational::new(w.into(), pow2_int(w as u64));
    let combos = BigRational::from_integer(pow2_int(l as u64) - 1);
    let markov = (&one - &combos * &p).max(BigRational::zero());
    let even_rows = rational_from_uint(pow2((l * w - l) as u64));
    let lower = (&total * markov).max(even_rows);
    let upper = &total * (&one - &p) / (&combos * &p + &one - &p);
    BoundPair::new(lower, upper)
}

/// Exact `Q_{L,w}` values keyed by `(L, w)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QTable {
    entries: BTreeMap<(usize, usize), BigUint>,
}

#[derive(Serialize, Deserialize)]
struct QEntry {
    #[serde(rename = "L")]
    l: usize,
    w: usize,
    q: String,
}

impl QTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, l: usize, w: usize, q: BigUint) -> Result<()> {
        if q > pow2((l * w) as u64) {
            return Err(invalid(format!("Q_{{{l},{w}}} = {q} exceeds 2^(Lw)")));
        }
        self.entries.insert((l, w), q);
        Ok(())
    }

    pub fn get(&self, l: usize, w: usize) -> Option<&BigUint> {
        self.entries.get(&(l, w))
    }

    pub fn require(&self, l: usize, w: usize) -> Result<&BigUint> {
        self.get(l, w).ok_or(Error::MissingQ { l, w })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.entries.iter().map(|(&(l, w), q)| (l, w, q))
    }

    /// Grid filled by parallel Gray-code enumeration.
    pub fn enumerate(ls: impl IntoIterator<Item = usize>, ws: impl IntoIterator<Item = usize> + Clone) -> Result<Self> {
        let mut table = Self::new();
        for l in ls {
            for w in ws.clone() {
                let q = count_dmin_ge2_parallel(l, w, rayon::current_num_threads() * 4)?;
                table.insert(l, w, BigUint::from(q))?;
            }
        }
        Ok(table)
    }

    /// Grid filled by the rank-stratified count; no size limit.
    pub fn by_rank(ls: impl IntoIterator<Item = usize>, ws: impl IntoIterator<Item = usize> + Clone) -> Result<Self> {
        let mut table = Self::new();
        for l in ls {
            for w in ws.clone() {
                table.insert(l, w, count_dmin_ge2_by_rank(l, w)?)?;
            }
        }
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<QEntry> = self
            .iter()
            .map(|(l, w, q)| QEntry { l, w, q: q.to_string() })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({ "entries": entries })).expect("QTable serializes")
    }

    pub fn from_json(src: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Repr {
            entries: Vec<QEntry>,
        }
        let repr: Repr = serde_json::from_str(src).map_err(|e| invalid(format!("bad QTable JSON: {e}")))?;
        let mut table = Self::new();
        for e in repr.entries {
            let q = e.q.parse::<BigUint>().map_err(|_| invalid(format!("bad Q value {:?}", e.q)))?;
            table.insert(e.l, e.w, q)?;
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(count_dmin_ge2(3, 4).unwrap(), 792);
        assert_eq!(count_dmin_ge2(1, 5).unwrap(), 27);
        assert_eq!(count_dmin_ge2(2, 4).unwrap(), 112);
    }

    #[test]
    fn structural_identities() {
        for l in 1..=5 {
            assert_eq!(count_dmin_ge2(l, 1).unwrap(), 1);
            assert_eq!(count_dmin_ge2(l, 2).unwrap(), 1 << l);
        }
        for w in 1..=10 {
            assert_eq!(count_dmin_ge2(1, w).unwrap(), (1 << w) - w as u64);
        }
    }

    #[test]
    fn fast_path_matches_naive_and_parallel() {
        for l in 1..=3 {
            for w in 1..=4 {
                let fast = count_dmin_ge2(l, w).unwrap();
                assert_eq!(fast, count_dmin_ge2_naive(l, w).unwrap(), "L={l} w={w}");
                for parts in [1, 3, 7, 64] {
                    assert_eq!(fast, count_dmin_ge2_parallel(l, w, parts).unwrap());
                }
            }
        }
    }

    #[test]
    fn guard_and_validation() {
        assert!(matches!(count_dmin_ge2(6, 6), Err(Error::GuardExceeded { .. })));
        assert!(count_dmin_ge2(0, 3).is_err());
        assert!(bounds_dmin_count(2, 0).is_err());
    }

    #[test]
    fn bounds_bracket_counts() {
        let b = bounds_dmin_count(2, 4).unwrap();
        let q = rational_from_uint(BigUint::from(112u32));
        assert!(b.lower <= q && q <= b.upper);
        // w = 1: the upper bound keeps the factor 1 - 1/2 in its numerator.
        let b = bounds_dmin_count(3, 1).unwrap();
        let one = rational_from_uint(BigUint::from(1u32));
        assert!(b.lower <= one && one <= b.upper);
        for w in 1..=10 {
            let b = bounds_dmin_count(1, w).unwrap();
            let q = rational_from_uint(BigUint::from(count_dmin_ge2(1, w).unwrap()));
            assert!(b.lower <= q && q <= b.upper, "w={w}");
        }
    }

    #[test]
    fn table_json_round_trip() {
        let t = QTable::by_rank(1..=3, 1..=3).unwrap();
        assert_eq!(QTable::from_json(&t.to_json()).unwrap(), t);
        assert!(matches!(t.require(4, 1), Err(Error::MissingQ { l: 4, w: 1 })));
        let mut t = QTable::new();
        assert!(t.insert(1, 1, BigUint::from(3u32)).is_err());
    }
}
