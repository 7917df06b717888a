use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::{and_popcount, pack_bits, BinaryMatrix, SupportSet};
use crate::distribution::WeightDistribution;
use crate::error::{invalid, Error, Result};

/// Largest `n` accepted by [`ss_weight_distribution_exhaustive`].
pub const MAX_EXHAUSTIVE_N: usize = 30;

/// Number of rows whose integer inner product with `x` is exactly 1.
pub fn ss_indicator(h: &BinaryMatrix, x: &[bool]) -> Result<usize> {
    if x.len() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            got: x.len(),
        });
    }
    Ok(ss_indicator_packed(h, &pack_bits(x)))
}

pub(crate) fn ss_indicator_packed(h: &BinaryMatrix, x: &[u64]) -> usize {
    h.rows().filter(|row| and_popcount(row, x) == 1).count()
}

/// `true` iff the support of `x` is a stopping set of `h`.
pub fn is_stopping_vector(h: &BinaryMatrix, x: &[bool]) -> Result<bool> {
    Ok(ss_indicator(h, x)? == 0)
}

pub fn is_stopping_set(h: &BinaryMatrix, s: &SupportSet) -> bool {
    let x = pack_bits(&s.indicator(h.n()));
    ss_indicator_packed(h, &x) == 0
}

/// `S_w(H)` for every weight, by visiting all `2^n` vectors.
pub fn ss_weight_distribution_exhaustive(h: &BinaryMatrix) -> Result<WeightDistribution> {
    let n = h.n();
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::GuardExceeded {
            what: "n",
            value: n,
            limit: MAX_EXHAUSTIVE_N,
        });
    }
    let rows: Vec<u64> = (0..h.m()).map(|i| h.row_word(i)).collect();
    let total = 1u64 << n;
    let chunk = (total / 256).max(1 << 12);
    let counts = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut local = vec![0u64; n + 1];
            for x in c * chunk..((c + 1) * chunk).min(total) {
                if rows.iter().all(|r| (r & x).count_ones() != 1) {
                    local[x.count_ones() as usize] += 1;
                }
            }
            local
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(WeightDistribution::from_counts(&counts))
}

/// Depth-first support growth in ascending column order.
///
/// A branch is cut only when some row already meets the support in exactly
/// one column and has no column left beyond the newest one, so it can never
/// reach a second one. The final column is matched against packed row masks
/// instead of being pushed.
struct Search<'a> {
    col_rows: &'a [Vec<usize>],
    col_masks: &'a [Vec<u64>],
    last_col: &'a [usize],
    n: usize,
    w_max: usize,
    counts: Vec<u32>,
    ones: usize,
    support: Vec<usize>,
}

/// Shared per-matrix tables for [`Search`].
struct Tables {
    col_rows: Vec<Vec<usize>>,
    col_masks: Vec<Vec<u64>>,
    last_col: Vec<usize>,
}

impl Tables {
    fn new(h: &BinaryMatrix) -> Self {
        let col_rows = h.column_supports();
        let col_masks = col_rows
            .iter()
            .map(|rows| {
                let mut mask = vec![0u64; h.m().div_ceil(64)];
                rows.iter().for_each(|&r| mask[r / 64] |= 1 << (r % 64));
                mask
            })
            .collect();
        // Rows without any one never hold a count of 1, so their value is unused.
        let last_col = (0..h.m()).map(|i| h.row_support(i).last().copied().unwrap_or(0)).collect();
        Tables {
            col_rows,
            col_masks,
            last_col,
        }
    }

    fn search(&self, h: &BinaryMatrix, w_max: usize) -> Search<'_> {
        Search {
            col_rows: &self.col_rows,
            col_masks: &self.col_masks,
            last_col: &self.last_col,
            n: h.n(),
            w_max,
            counts: vec![0; h.m()],
            ones: 0,
            support: Vec::with_capacity(w_max),
        }
    }
}

impl Search<'_> {
    fn push(&mut self, j: usize) {
        for &r in &self.col_rows[j] {
            self.counts[r] += 1;
            match self.counts[r] {
                1 => self.ones += 1,
                2 => self.ones -= 1,
                _ => {}
            }
        }
        self.support.push(j);
    }

    fn pop(&mut self) {
        let j = self.support.pop().expect("pop on empty support");
        for &r in &self.col_rows[j] {
            match self.counts[r] {
                1 => self.ones -= 1,
                2 => self.ones += 1,
                _ => {}
            }
            self.counts[r] -= 1;
        }
    }

    fn dead(&self, newest: usize) -> bool {
        self.ones > 0
            && self
                .counts
                .iter()
                .zip(self.last_col)
                .any(|(&c, &last)| c == 1 && last <= newest)
    }

    /// Visits every stopping set whose smallest column is `first`.
    fn run(&mut self, first: usize, visit: &mut impl FnMut(&[usize])) {
        self.push(first);
        self.descend(visit);
        self.pop();
    }

    fn descend(&mut self, visit: &mut impl FnMut(&[usize])) {
        let newest = *self.support.last().unwrap();
        if self.dead(newest) {
            return;
        }
        if self.ones == 0 {
            visit(&self.support);
        }
        match self.w_max - self.support.len() {
            0 => {}
            1 => self.last_column(newest, visit),
            _ => {
                for j in newest + 1..self.n {
                    self.push(j);
                    self.descend(visit);
                    self.pop();
                }
            }
        }
    }

    /// Adding column `j` gives a stopping set iff, on rows met at most once,
    /// `j` covers exactly the rows met once.
    fn last_column(&mut self, newest: usize, visit: &mut impl FnMut(&[usize])) {
        let words = self.counts.len().div_ceil(64);
        let mut once = vec![0u64; words];
        let mut at_most_once = vec![0u64; words];
        for (r, &c) in self.counts.iter().enumerate() {
            if c <= 1 {
                at_most_once[r / 64] |= 1 << (r % 64);
                if c == 1 {
                    once[r / 64] |= 1 << (r % 64);
                }
            }
        }
        for j in newest + 1..self.n {
            let mask = &self.col_masks[j];
            if (0..words).all(|k| mask[k] & at_most_once[k] == once[k]) {
                self.support.push(j);
                visit(&self.support);
                self.support.pop();
            }
        }
    }
}

fn check_w_max(h: &BinaryMatrix, w_max: usize) -> Result<()> {
    if w_max == 0 || w_max > h.n() {
        return Err(invalid(format!("w_max {w_max} outside [1, {}]", h.n())));
    }
    Ok(())
}

/// All nonempty stopping sets of weight at most `w_max`, sorted by weight
/// and then lexicographically.
pub fn enumerate_stopping_sets(h: &BinaryMatrix, w_max: usize) -> Result<Vec<SupportSet>> {
    check_w_max(h, w_max)?;
    let tables = Tables::new(h);
    let mut found: Vec<SupportSet> = (0..h.n())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut local = Vec::new();
            tables
                .search(h, w_max)
                .run(first, &mut |s| local.push(SupportSet::from_zero_based(s.to_vec())));
            local
        })
        .collect();
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

/// Number of stopping sets of exactly weight `w`.
pub fn count_stopping_sets_of_weight(h: &BinaryMatrix, w: usize) -> Result<u64> {
    check_w_max(h, w)?;
    let tables = Tables::new(h);
    Ok((0..h.n())
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            tables.search(h, w).run(first, &mut |s| count += u64::from(s.len() == w));
            count
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoppingReport {
    /// Smallest nonempty stopping-set weight, or `None` if there is none up to `w_max`.
    pub distance: Option<usize>,
    /// Stopping sets at that weight (0 when `distance` is `None`).
    pub multiplicity: u64,
    pub w_max: usize,
}

/// Default search bound, `min(n, 10)`.
pub fn default_w_max(h: &BinaryMatrix) -> usize {
    h.n().min(10)
}

pub fn stopping_distance(h: &BinaryMatrix, w_max: usize) -> Result<StoppingReport> {
    check_w_max(h, w_max)?;
    for w in 1..=w_max {
        let count = count_stopping_sets_of_weight(h, w)?;
        if count > 0 {
            return Ok(StoppingReport {
                distance: Some(w),
                multiplicity: count,
                w_max,
            });
        }
    }
    Ok(StoppingReport {
        distance: None,
        multiplicity: 0,
        w_max,
    })
}
