use crate::gf2core::{BinaryMatrix, SupportSet};
use crate::error::{Error, Result};

use super::ErasurePattern;

/// Sparse view of a parity-check matrix for repeated peeling.
#[derive(Debug, Clone)]
pub struct PeelingDecoder {
    n: usize,
    row_cols: Vec<Vec<usize>>,
    col_rows: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelOutcome {
    pub success: bool,
    /// Erasures left when no row touches exactly one of them: the largest
    /// stopping set inside the erasure pattern (empty on success).
    pub residual: SupportSet,
}

impl PeelingDecoder {
    pub fn new(h: &BinaryMatrix) -> Self {
        Self {
            n: h.n(),
            row_cols: (0..h.m()).map(|i| h.row_support(i)).collect(),
            col_rows: h.column_supports(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Decodes an erasure mask (`true` = erased) in place; returns whether
    /// every erasure was resolved.
    ///
    /// Rows are kept on a worklist keyed by how many erased positions they
    /// still touch; a row reaching degree 1 resolves its last erasure.
    pub fn peel_mask(&self, erased: &mut [bool]) -> bool {
        let mut degree: Vec<u32> = self
            .row_cols
            .iter()
            .map(|cols| cols.iter().filter(|&&j| erased[j]).count() as u32)
            .collect();
        let mut work: Vec<usize> = (0..degree.len()).filter(|&i| degree[i] == 1).collect();
        let mut remaining = erased.iter().filter(|&&e| e).count();
        while let Some(row) = work.pop() {
            if degree[row] != 1 {
                continue;
            }
            let col = *self.row_cols[row]
                .iter()
                .find(|&&j| erased[j])
                .expect("degree-1 row has an erased column");
            erased[col] = false;
            remaining -= 1;
            for &r in &self.col_rows[col] {
                degree[r] -= 1;
                if degree[r] == 1 {
                    work.push(r);
                }
            }
        }
        remaining == 0
    }

    /// Peels with rows taken in the caller's priority order each round, used
    /// to check that the residual does not depend on processing order.
    pub fn peel_mask_ordered(&self, erased: &mut [bool], order: &[usize]) -> bool {
        loop {
            let hit = order.iter().find_map(|&row| {
                let mut it = self.row_cols[row].iter().filter(|&&j| erased[j]);
                match (it.next(), it.next()) {
                    (Some(&j), None) => Some(j),
                    _ => None,
                }
            });
            match hit {
                Some(j) => erased[j] = false,
                None => return !erased.iter().any(|&e| e),
            }
        }
    }

    pub fn decode(&self, pattern: &ErasurePattern) -> Result<PeelOutcome> {
        if pattern.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: pattern.n() });
        }
        let mut erased = pattern.erased().indicator(self.n);
        let success = self.peel_mask(&mut erased);
        Ok(PeelOutcome {
            success,
            residual: SupportSet::from_indicator(&erased),
        })
    }
}

/// One-shot peeling decode of an erasure pattern.
pub fn peel_decode(h: &BinaryMatrix, pattern: &ErasurePattern) -> Result<PeelOutcome> {
    PeelingDecoder::new(h).decode(pattern)
}
