//! Weight distribution of the code generated by a (small) generator matrix.

use super::matrix::BinaryMatrix;
use crate::distribution::WeightDistribution;
use crate::error::{Error, Result};

/// Largest row count accepted for message enumeration.
pub const MAX_MESSAGE_BITS: usize = 24;

/// `A_w(G)` counted by message: every nonzero `m` contributes to the weight of `mG`.
///
/// Messages are visited in Gray-code order so each codeword is one row XOR
/// away from the previous one.
pub fn codeword_weight_counts(g: &BinaryMatrix) -> Result<Vec<u64>> {
    let k = g.m();
    if k > MAX_MESSAGE_BITS {
        return Err(Error::GuardExceeded {
            what: "K",
            value: k,
            limit: MAX_MESSAGE_BITS,
        });
    }
    let mut counts = vec![0u64; g.n() + 1];
    let mut word = vec![0u64; g.stride()];
    for step in 1u64..(1u64 << k) {
        let flip = step.trailing_zeros() as usize;
        word.iter_mut().zip(g.row(flip)).for_each(|(a, b)| *a ^= b);
        let weight: u32 = word.iter().map(|w| w.count_ones()).sum();
        counts[weight as usize] += 1;
    }
    counts[0] = 0;
    Ok(counts)
}

/// Entry 0 is reported as 0: the zero message is excluded, and a nonzero
/// message mapping to the zero word is not a codeword of positive weight.
pub fn codeword_weight_distribution(g: &BinaryMatrix) -> Result<WeightDistribution> {
    Ok(WeightDistribution::from_counts(&codeword_weight_counts(g)?))
}

/// Smallest positive codeword weight; `None` stands for infinity (all rows zero
/// or every nonzero combination vanishes).
pub fn min_distance(g: &BinaryMatrix) -> Result<Option<usize>> {
    let counts = codeword_weight_counts(g)?;
    Ok(counts.iter().enumerate().skip(1).find(|(_, &c)| c > 0).map(|(w, _)| w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_generator() {
        let g = BinaryMatrix::zeros(1, 4).unwrap();
        assert!(codeword_weight_counts(&g).unwrap().iter().all(|&c| c == 0));
        assert_eq!(min_distance(&g).unwrap(), None);
    }

    #[test]
    fn small_generators() {
        let g = BinaryMatrix::from_rows(&[[1u8, 1]]).unwrap();
        assert_eq!(codeword_weight_counts(&g).unwrap(), vec![0, 0, 1]);
        assert_eq!(min_distance(&g).unwrap(), Some(2));

        let g = BinaryMatrix::from_rows(&[[1u8, 0], [0, 1]]).unwrap();
        assert_eq!(codeword_weight_counts(&g).unwrap(), vec![0, 2, 1]);
        assert_eq!(min_distance(&g).unwrap(), Some(1));

        let g = BinaryMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1]]).unwrap();
        assert_eq!(codeword_weight_counts(&g).unwrap(), vec![0, 0, 3, 0]);
        assert_eq!(min_distance(&g).unwrap(), Some(2));
    }

    #[test]
    fn guard() {
        let g = BinaryMatrix::zeros(25, 3).unwrap();
        assert!(matches!(codeword_weight_counts(&g), Err(Error::GuardExceeded { .. })));
    }
}
