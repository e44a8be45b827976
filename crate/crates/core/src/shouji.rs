//! Shouji filter.
//!
//! A `w`-column search window (default 4) slides over the neighborhood map
//! one column at a time, `m` windows in total. In each window the diagonal
//! slice with the most zeros is selected, and it replaces the corresponding
//! slice of the Shouji bit-vector only if it holds strictly more zeros. The
//! pair is accepted when the bit-vector ends with at most `E` ones.

use crate::bitvec::BitVec;
use crate::neighborhood::{build_map, NeighborhoodMap};
use crate::seq_codec::PackedSequence;
use crate::{FilterDecision, FilterError};

pub const DEFAULT_WIDTH: usize = 4;
pub const MIN_WIDTH: usize = 3;
pub const MAX_WIDTH: usize = 8;

/// Zero counts for every `w`-bit slice, the software stand-in for the
/// hardware LUT.
#[derive(Debug, Clone)]
pub struct ZeroCountTable {
    width: usize,
    counts: Vec<u8>,
}

impl ZeroCountTable {
    pub fn new(width: usize) -> Result<Self, FilterError> {
        if !(MIN_WIDTH..=MAX_WIDTH).contains(&width) {
            return Err(FilterError::InvalidWidth(width));
        }
        let counts = (0u32..1 << width)
            .map(|slice| (width as u32 - slice.count_ones()) as u8)
            .collect();
        Ok(ZeroCountTable { width, counts })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn zeros(&self, slice: u8) -> usize {
        self.counts[slice as usize] as usize
    }
}

/// Zero count of a `width`-bit slice.
pub fn count_zeros_nibble(slice: u8, table: &ZeroCountTable) -> usize {
    table.zeros(slice)
}

/// Best diagonal slice of one search window. Bit 0 of `slice` is the
/// window's first column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowChoice {
    pub diagonal: isize,
    pub slice: u8,
    pub zeros: usize,
}

impl WindowChoice {
    #[inline]
    fn leading_zero(&self) -> bool {
        self.slice & 1 == 0
    }
}

/// Picks the slice with the most zeros among all diagonals at window
/// `start`. Ties go to the first scanned slice with a leading zero, or the
/// first scanned slice if none has one. Scan order is `d = -E..=E`.
pub fn select_window(map: &NeighborhoodMap, start: usize, table: &ZeroCountTable) -> WindowChoice {
    let width = table.width();
    let mut best: Option<WindowChoice> = None;
    for (d, diag) in map.iter() {
        let slice = diag.window(start, width) as u8;
        let candidate = WindowChoice {
            diagonal: d,
            slice,
            zeros: table.zeros(slice),
        };
        best = Some(match best {
            None => candidate,
            Some(b) if candidate.zeros > b.zeros => candidate,
            Some(b) if candidate.zeros == b.zeros && !b.leading_zero() && candidate.leading_zero() => {
                candidate
            }
            Some(b) => b,
        });
    }
    best.expect("neighborhood map has at least one diagonal")
}

/// Accumulator of recovered matches; ones count as edits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShoujiBitVector {
    bits: BitVec,
}

impl ShoujiBitVector {
    pub fn new(m: usize) -> Self {
        ShoujiBitVector {
            bits: BitVec::ones(m),
        }
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn into_bits(self) -> BitVec {
        self.bits
    }

    /// Zeros stored in the in-range part of `[start, start + width)`.
    pub fn zeros_in(&self, start: usize, width: usize) -> usize {
        let in_range = width.min(self.bits.len().saturating_sub(start));
        in_range - (self.bits.window(start, width) & ((1 << in_range) - 1)).count_ones() as usize
    }
}

/// Stores `choice` at `start` if it holds strictly more zeros than what is
/// already there. Returns whether the vector changed.
pub fn commit_window(
    bv: &mut ShoujiBitVector,
    start: usize,
    choice: &WindowChoice,
    table: &ZeroCountTable,
) -> bool {
    let width = table.width();
    if choice.zeros > bv.zeros_in(start, width) {
        bv.bits.write_window(start, width, choice.slice as u64);
        true
    } else {
        false
    }
}

/// Runs the full window sweep over a prebuilt map.
pub fn sweep(map: &NeighborhoodMap, table: &ZeroCountTable) -> ShoujiBitVector {
    let mut bv = ShoujiBitVector::new(map.len());
    for start in 0..map.len() {
        let choice = select_window(map, start, table);
        commit_window(&mut bv, start, &choice, table);
    }
    bv
}

pub fn shouji_filter(
    pattern: &PackedSequence,
    text: &PackedSequence,
    e: usize,
    width: usize,
) -> Result<FilterDecision, FilterError> {
    let table = ZeroCountTable::new(width)?;
    let m = text.len();
    if pattern.len() != m {
        return Err(FilterError::LengthMismatch {
            pattern: pattern.len(),
            text: m,
        });
    }
    if e >= m {
        return Ok(FilterDecision {
            accept: true,
            edit_estimate: 0,
            bitvector: BitVec::zeros(m),
        });
    }
    let map = build_map(pattern, text, e)?;
    let bits = sweep(&map, &table).into_bits();
    let edit_estimate = bits.count_ones();
    Ok(FilterDecision {
        accept: edit_estimate <= e,
        edit_estimate,
        bitvector: bits,
    })
}
