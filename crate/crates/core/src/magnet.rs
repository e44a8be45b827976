//! MAGNET filter.
//!
//! Recursively extracts the longest run of zeros found on any diagonal,
//! copies it into the MAGNET bit-vector, masks it (and one flanking column on
//! each side) out of every diagonal, then recurses on the parts of the range
//! left and right of the masked block. At most `E + 1` runs are extracted per
//! pair. The pair is accepted when the bit-vector holds at least `m - E`
//! zeros.

use std::ops::Range;

use crate::bitvec::BitVec;
use crate::neighborhood::{build_map, NeighborhoodMap};
use crate::seq_codec::PackedSequence;
use crate::{FilterDecision, FilterError};

/// One extracted common subsequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub diagonal: isize,
    pub start: usize,
    pub len: usize,
    /// Sub-range the run was searched in.
    pub bounds: Range<usize>,
}

/// Accumulator for MAGNET, all ones until runs are copied in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnetBitVector {
    bits: BitVec,
}

impl MagnetBitVector {
    pub fn new(m: usize) -> Self {
        MagnetBitVector {
            bits: BitVec::ones(m),
        }
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn count_zeros(&self) -> usize {
        self.bits.count_zeros()
    }

    fn clear_run(&mut self, start: usize, len: usize) {
        for i in start..start + len {
            self.bits.set(i, false);
        }
    }
}

/// Earliest longest run of zeros in `range`, as `(start, len)`. Returns
/// `(range.start, 0)` when the range is empty or holds no zero.
pub fn longest_zero_run(bits: &BitVec, range: Range<usize>) -> (usize, usize) {
    let end = range.end.min(bits.len());
    let mut best = (range.start, 0);
    let mut i = range.start;
    while i < end {
        // Skip ones a word at a time.
        let ones = (!bits.window(i, 64)).trailing_zeros() as usize;
        if ones > 0 {
            i += ones;
            continue;
        }
        let zeros = (bits.window(i, 64).trailing_zeros() as usize).min(end - i);
        let mut run = zeros;
        while zeros == 64 && i + run < end {
            let more = (bits.window(i + run, 64).trailing_zeros() as usize).min(end - i - run);
            run += more;
            if more < 64 {
                break;
            }
        }
        if run > best.1 {
            best = (i, run);
        }
        i += run;
    }
    best
}

/// Extraction-encapsulation step over `range`, recursing on both sides.
///
/// `map` is mutated (extracted columns are masked to ones in every
/// diagonal), `budget` counts down once per extraction and is shared by the
/// left recursion first, then the right.
pub fn exen(
    map: &mut NeighborhoodMap,
    range: Range<usize>,
    budget: &mut usize,
    bv: &mut MagnetBitVector,
    log: &mut Vec<Extraction>,
) {
    if *budget == 0 || range.start >= range.end {
        return;
    }
    let e = map.threshold() as isize;
    // longest wins; ties: smaller |d|, then -d before +d, earliest start
    let scan = std::iter::once(0).chain((1..=e).flat_map(|k| [-k, k]));
    let mut best: Option<(isize, usize, usize)> = None;
    for d in scan {
        let (start, len) = longest_zero_run(map.diagonal(d), range.clone());
        if len > best.map_or(0, |b| b.2) {
            best = Some((d, start, len));
        }
    }
    let Some((diagonal, start, len)) = best else {
        return;
    };
    *budget -= 1;
    bv.clear_run(start, len);
    log.push(Extraction {
        diagonal,
        start,
        len,
        bounds: range.clone(),
    });
    let masked_lo = start.saturating_sub(1).max(range.start);
    let masked_hi = (start + len + 1).min(range.end);
    map.mask_columns(masked_lo..masked_hi);

    exen(map, range.start..masked_lo, budget, bv, log);
    exen(map, masked_hi..range.end, budget, bv, log);
}

/// Full MAGNET run on one pair, keeping the extraction log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnetRun {
    pub decision: FilterDecision,
    pub extractions: Vec<Extraction>,
}

pub fn run_magnet(
    pattern: &PackedSequence,
    text: &PackedSequence,
    e: usize,
) -> Result<MagnetRun, FilterError> {
    let m = text.len();
    if pattern.len() != m {
        return Err(FilterError::LengthMismatch {
            pattern: pattern.len(),
            text: m,
        });
    }
    if e >= m {
        return Ok(MagnetRun {
            decision: FilterDecision {
                accept: true,
                edit_estimate: 0,
                bitvector: BitVec::zeros(m),
            },
            extractions: Vec::new(),
        });
    }
    let mut map = build_map(pattern, text, e)?;
    let mut bv = MagnetBitVector::new(m);
    let mut budget = e + 1;
    let mut extractions = Vec::with_capacity(e + 1);
    exen(&mut map, 0..m, &mut budget, &mut bv, &mut extractions);
    let zeros = bv.count_zeros();
    Ok(MagnetRun {
        decision: FilterDecision {
            accept: zeros + e >= m,
            edit_estimate: m - zeros,
            bitvector: bv.bits,
        },
        extractions,
    })
}

pub fn magnet_filter(
    pattern: &PackedSequence,
    text: &PackedSequence,
    e: usize,
) -> Result<FilterDecision, FilterError> {
    run_magnet(pattern, text, e).map(|run| run.decision)
}
