use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub(crate) const WORD_BITS: usize = 64;

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Packs a 0/1 vector into little-endian 64-bit words.
pub fn pack_bits(x: &[bool]) -> Vec<u64> {
    let mut words = vec![0u64; words_for(x.len())];
    for (j, &b) in x.iter().enumerate() {
        if b {
            words[j / WORD_BITS] |= 1 << (j % WORD_BITS);
        }
    }
    words
}

/// Number of positions where both packed vectors are 1 (integer inner product).
#[inline]
pub fn and_popcount(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// Dense m x n matrix over GF(2), rows packed into 64-bit words.
///
/// Bits beyond column `n` in the last word of each row are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    m: usize,
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyMatrix { m, n });
        }
        let stride = words_for(n);
        Ok(Self {
            m,
            n,
            stride,
            bits: vec![0; m * stride],
        })
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut out = Self::zeros(m, n)?;
        for i in 0..m {
            for j in 0..n {
                if f(i, j) {
                    out.set(i, j);
                }
            }
        }
        Ok(out)
    }

    /// Builds a matrix from rows of 0/1 entries; all rows must have equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut out = Self::zeros(m, n)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => out.set(i, j),
                    other => return Err(invalid(format!("entry {other} is not 0 or 1"))),
                }
            }
        }
        Ok(out)
    }

    /// Builds a matrix from packed rows; padding bits are cleared.
    pub fn from_packed_rows(n: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        let m = rows.len();
        let mut out = Self::zeros(m, n)?;
        let mask = out.tail_mask();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != out.stride {
                return Err(Error::DimensionMismatch {
                    expected: out.stride,
                    got: row.len(),
                });
            }
            let dst = out.row_mut(i);
            dst.copy_from_slice(&row);
            if let Some(last) = dst.last_mut() {
                *last &= mask;
            }
        }
        Ok(out)
    }

    /// Uniform draw from the random ensemble (every entry an independent fair bit).
    pub fn random<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Result<Self> {
        let mut out = Self::zeros(m, n)?;
        let mask = out.tail_mask();
        for i in 0..m {
            let row = out.row_mut(i);
            for w in row.iter_mut() {
                *w = rng.gen();
            }
            *row.last_mut().unwrap() &= mask;
        }
        Ok(out)
    }

    /// Uniform draw from the constant-row-weight ensemble.
    pub fn random_const_row<R: Rng + ?Sized>(m: usize, n: usize, r: usize, rng: &mut R) -> Result<Self> {
        if r == 0 || r > n {
            return Err(invalid(format!("row weight {r} outside [1, {n}]")));
        }
        let mut out = Self::zeros(m, n)?;
        for i in 0..m {
            for j in rand::seq::index::sample(rng, n, r) {
                out.set(i, j);
            }
        }
        Ok(out)
    }

    fn tail_mask(&self) -> u64 {
        match self.n % WORD_BITS {
            0 => u64::MAX,
            k => (1u64 << k) - 1,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Words per packed row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.m && j < self.n, "index ({i}, {j}) out of bounds");
        (self.bits[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.stride + j / WORD_BITS] |= 1 << (j % WORD_BITS);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.bits.chunks_exact(self.stride)
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_bits(&self, i: usize) -> Vec<bool> {
        (0..self.n).map(|j| self.get(i, j)).collect()
    }

    /// Column indices (0-based) of the ones in row `i`.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.get(i, j)).collect()
    }

    /// For every column, the rows (0-based) with a one in that column.
    pub fn column_supports(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.n];
        for i in 0..self.m {
            for j in self.row_support(i) {
                cols[j].push(i);
            }
        }
        cols
    }

    /// Single-word view of row `i`; only valid when `n <= 64`.
    pub(crate) fn row_word(&self, i: usize) -> u64 {
        debug_assert!(self.stride == 1);
        self.bits[i]
    }

    /// Reduced row-echelon form over GF(2) with zero rows dropped.
    pub fn reduced_row_echelon(&self) -> Vec<Vec<u64>> {
        let mut rows: Vec<Vec<u64>> = self.rows().map(<[u64]>::to_vec).collect();
        let mut rank = 0;
        for col in 0..self.n {
            let (w, b) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & b != 0 {
                    row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        rows
    }

    pub fn rank(&self) -> usize {
        self.reduced_row_echelon().len()
    }

    /// True when both matrices span the same GF(2) row space.
    pub fn same_row_space(&self, other: &Self) -> bool {
        self.n == other.n && self.reduced_row_echelon() == other.reduced_row_echelon()
    }

    /// Redundant extension of degree `l`: each block of `l` consecutive rows is
    /// replaced by all `2^l - 1` nonzero GF(2) combinations of its rows.
    ///
    /// Within a block, combination `i` (1 ..= 2^l - 1) includes row `j` of the
    /// block iff bit `j` of `i` is set, so for `l = 2` the block reads
    /// `h1, h2, h1 + h2`.
    pub fn redundant_extend(&self, l: usize) -> Result<Self> {
        if l == 0 || !self.m.is_multiple_of(l) {
            return Err(Error::NotDivisible { l, m: self.m });
        }
        if l >= 31 {
            return Err(Error::GuardExceeded {
                what: "extension degree",
                value: l,
                limit: 30,
            });
        }
        let combos = (1usize << l) - 1;
        let mut out = Self::zeros(combos * (self.m / l), self.n)?;
        let mut dst = 0;
        for block in 0..self.m / l {
            for i in 1..=combos {
                let mut acc = vec![0u64; self.stride];
                for j in 0..l {
                    if (i >> j) & 1 == 1 {
                        let src = self.row(block * l + j);
                        acc.iter_mut().zip(src).for_each(|(a, s)| *a ^= s);
                    }
                }
                out.row_mut(dst).copy_from_slice(&acc);
                dst += 1;
            }
        }
        Ok(out)
    }

    /// Appends rows of `other` below `self`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Ok(Self {
            m: self.m + other.m,
            n: self.n,
            stride: self.stride,
            bits,
        })
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.m, self.n)?;
        for i in 0..self.m {
            let line: String = (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Sorted set of 1-based column indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct SupportSet {
    indices: Vec<usize>,
}

impl SupportSet {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("duplicate index in support set"));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(invalid(format!("index {bad} outside [1, {n}]")));
        }
        Ok(Self { indices })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Support of a 0/1 vector.
    pub fn from_indicator(x: &[bool]) -> Self {
        Self {
            indices: x.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j + 1).collect(),
        }
    }

    pub(crate) fn from_zero_based(mut cols: Vec<usize>) -> Self {
        cols.sort_unstable();
        Self {
            indices: cols.into_iter().map(|c| c + 1).collect(),
        }
    }

    pub fn indicator(&self, n: usize) -> Vec<bool> {
        let mut x = vec![false; n];
        for &i in &self.indices {
            x[i - 1] = true;
        }
        x
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
