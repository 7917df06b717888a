//! Bit-exact GF(2) matrices and exhaustive stopping-set computations on them.

mod code;
mod io;
mod matrix;
mod stopping;

pub use code::{codeword_weight_counts, codeword_weight_distribution, min_distance, MAX_MESSAGE_BITS};
pub use io::{parse_alist, parse_text, to_alist, to_text};
pub use matrix::{and_popcount, pack_bits, BinaryMatrix, SupportSet};
pub use stopping::{
    count_stopping_sets_of_weight, default_w_max, enumerate_stopping_sets, is_stopping_set, is_stopping_vector,
    ss_indicator, ss_weight_distribution_exhaustive, stopping_distance, StoppingReport, MAX_EXHAUSTIVE_N,
};

/// `redundant_extend(H, L)` as a free function.
pub fn redundant_extend(h: &BinaryMatrix, l: usize) -> crate::Result<BinaryMatrix> {
    h.redundant_extend(l)
}
