//! Neighborhood map: the 2E+1 diagonal mismatch vectors around the main
//! diagonal.
//!
//! Diagonal `d` (for `d` in `-E..=E`) is indexed by text position `j` and
//! holds `D_d[j] = 0` iff `pattern[j + d] == text[j]`. Comparisons that fall
//! off either end of the pattern, or involve an N on either side, are 1.

use crate::bitvec::BitVec;
use crate::seq_codec::PackedSequence;
use crate::FilterError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodMap {
    m: usize,
    e: usize,
    diagonals: Vec<BitVec>,
}

impl NeighborhoodMap {
    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn threshold(&self) -> usize {
        self.e
    }

    /// Iterates diagonal offsets in scan order `-E..=E`.
    pub fn offsets(&self) -> impl Iterator<Item = isize> {
        let e = self.e as isize;
        -e..=e
    }

    pub fn diagonal(&self, d: isize) -> &BitVec {
        &self.diagonals[self.slot(d)]
    }

    pub fn diagonals(&self) -> &[BitVec] {
        &self.diagonals
    }

    /// `(offset, vector)` pairs in scan order.
    pub fn iter(&self) -> impl Iterator<Item = (isize, &BitVec)> {
        self.offsets().zip(self.diagonals.iter())
    }

    /// Overwrites every diagonal with ones over `columns`.
    pub fn mask_columns(&mut self, columns: std::ops::Range<usize>) {
        for diag in &mut self.diagonals {
            diag.set_range(columns.clone());
        }
    }

    /// Entry for pattern position `i` against text position `j` (0-based).
    pub fn entry(&self, i: usize, j: usize) -> Result<bool, FilterError> {
        let d = i as isize - j as isize;
        if i >= self.m || j >= self.m || d.unsigned_abs() > self.e {
            return Err(FilterError::OutOfBand { i, j, e: self.e });
        }
        Ok(self.diagonal(d).get(j))
    }

    #[inline]
    fn slot(&self, d: isize) -> usize {
        assert!(d.unsigned_abs() <= self.e, "diagonal {d} outside band ±{}", self.e);
        (d + self.e as isize) as usize
    }
}

/// Builds all 2E+1 diagonals with whole-vector shift, XOR and OR passes over
/// the packed planes.
pub fn build_map(
    pattern: &PackedSequence,
    text: &PackedSequence,
    e: usize,
) -> Result<NeighborhoodMap, FilterError> {
    let m = text.len();
    if pattern.len() != m {
        return Err(FilterError::LengthMismatch {
            pattern: pattern.len(),
            text: m,
        });
    }
    if e >= m {
        return Err(FilterError::ThresholdTooLarge { e, m });
    }
    let e_signed = e as isize;
    let diagonals = (-e_signed..=e_signed)
        .map(|d| {
            // Out-of-range pattern positions shift in as N, so they mismatch.
            let mut diag = pattern.n_mask().shifted(d);
            diag.or_assign(text.n_mask());
            diag.or_xor_assign(&pattern.hi_plane().shifted(d), text.hi_plane());
            diag.or_xor_assign(&pattern.lo_plane().shifted(d), text.lo_plane());
            diag
        })
        .collect();
    Ok(NeighborhoodMap { m, e, diagonals })
}

/// Position-by-position comparison used in tests as the reference for
/// [`build_map`].
pub fn naive_entry(pattern: &[u8], text: &[u8], i: usize, j: usize) -> bool {
    let p = pattern[i].to_ascii_uppercase();
    let t = text[j].to_ascii_uppercase();
    p == b'N' || t == b'N' || p != t
}
