//! Bit-parallel pre-alignment filtering for equal-length DNA sequence pairs.
//!
//! Given a pattern, a text and an edit-distance threshold `E`, a filter
//! decides whether the pair can be skipped before running a full aligner.
//! Two filters are provided, [`shouji`] and [`magnet`], both operating on the
//! [`neighborhood`] map of 2E+1 diagonal mismatch vectors. The
//! [`align_oracle`] module supplies the exact edit distance used to score
//! them, and [`harness`] ties everything together for evaluation,
//! benchmarking and the `prefilter` command-line tool.
//!
//! All positions in this crate are 0-based and ranges are half-open.
//!
//! ```
//! use prefilter_core::{seq_codec::validate_and_encode, shouji::shouji_filter};
//!
//! let text = validate_and_encode(b"GGTGCAGAGCTC").unwrap();
//! let pattern = validate_and_encode(b"GGTGAGAGTTGT").unwrap();
//! let decision = shouji_filter(&pattern, &text, 3, 4).unwrap();
//! assert!(decision.accept);
//! assert_eq!(decision.edit_estimate, 3);
//! ```

pub mod align_oracle;
pub mod bitvec;
pub mod harness;
pub mod magnet;
pub mod neighborhood;
pub mod seq_codec;
pub mod shouji;

use thiserror::Error;

pub use bitvec::BitVec;
pub use seq_codec::PackedSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("pattern length {pattern} does not match text length {text}")]
    LengthMismatch { pattern: usize, text: usize },
    #[error("threshold {e} needs {} diagonals but length {m} allows at most {}", 2 * e + 1, 2 * m - 1)]
    ThresholdTooLarge { e: usize, m: usize },
    #[error("cell ({i}, {j}) lies outside the ±{e} band")]
    OutOfBand { i: usize, j: usize, e: usize },
    #[error("window width {0} not in 3..=8")]
    InvalidWidth(usize),
}

/// Outcome of running a filter on one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterDecision {
    pub accept: bool,
    /// Ones in the final bit-vector.
    pub edit_estimate: usize,
    pub bitvector: BitVec,
}

impl FilterDecision {
    /// Single-bit wire form: 1 = accept (send to alignment), 0 = reject.
    pub fn wire_bit(&self) -> u8 {
        self.accept as u8
    }
}
