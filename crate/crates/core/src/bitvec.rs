//! Fixed-length bit-vector packed into `u64` words.
//!
//! Bit `i` lives in word `i / 64` at bit offset `i % 64`, so position 0 is the
//! least significant bit of the first word. Bits past `len` are always kept
//! clear in storage; readers that want "past the end reads as 1" semantics
//! (search windows) apply that explicitly.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

#[inline]
fn low_mask(width: usize) -> u64 {
    if width >= WORD_BITS {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut bv = BitVec {
            words: vec![u64::MAX; words_for(len)],
            len,
        };
        bv.clear_tail();
        bv
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for bit in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if bit {
                words[len / WORD_BITS] |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        BitVec { words, len }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Number of bits of backing storage.
    pub fn storage_bits(&self) -> usize {
        self.words.len() * WORD_BITS
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= bit;
        } else {
            self.words[i / WORD_BITS] &= !bit;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Reads `width` bits starting at `start` (bit 0 of the result is
    /// position `start`). Positions at or past `len` read as 1.
    #[inline]
    pub fn window(&self, start: usize, width: usize) -> u64 {
        debug_assert!(width > 0 && width <= WORD_BITS);
        let mask = low_mask(width);
        if start >= self.len {
            return mask;
        }
        let idx = start / WORD_BITS;
        let off = start % WORD_BITS;
        let mut value = self.words[idx] >> off;
        if off != 0 && off + width > WORD_BITS && idx + 1 < self.words.len() {
            value |= self.words[idx + 1] << (WORD_BITS - off);
        }
        value &= mask;
        let in_range = self.len - start;
        if in_range < width {
            value |= mask & !low_mask(in_range);
        }
        value
    }

    /// Writes the low `width` bits of `value` starting at `start`; bits that
    /// would land at or past `len` are dropped.
    #[inline]
    pub fn write_window(&mut self, start: usize, width: usize, value: u64) {
        let width = width.min(self.len.saturating_sub(start));
        if width == 0 {
            return;
        }
        let mask = low_mask(width);
        let value = value & mask;
        let idx = start / WORD_BITS;
        let off = start % WORD_BITS;
        self.words[idx] = (self.words[idx] & !(mask << off)) | (value << off);
        if off != 0 && off + width > WORD_BITS {
            let spill = WORD_BITS - off;
            self.words[idx + 1] = (self.words[idx + 1] & !(mask >> spill)) | (value >> spill);
        }
    }

    /// Sets every bit in `range` (clamped to the vector) to 1.
    pub fn set_range(&mut self, range: Range<usize>) {
        let end = range.end.min(self.len);
        let mut i = range.start;
        while i < end {
            let off = i % WORD_BITS;
            let take = (WORD_BITS - off).min(end - i);
            self.words[i / WORD_BITS] |= low_mask(take) << off;
            i += take;
        }
    }

    /// Copy where `out[j] = self[j + offset]`; positions whose source falls
    /// outside `0..len` become 1.
    pub fn shifted(&self, offset: isize) -> BitVec {
        let len = self.len;
        let shift = offset.unsigned_abs();
        if shift >= len {
            return BitVec::ones(len);
        }
        let n = self.words.len();
        let q = shift / WORD_BITS;
        let r = shift % WORD_BITS;
        let mut words = vec![0u64; n];
        if offset >= 0 {
            for (k, out) in words.iter_mut().enumerate() {
                let src = k + q;
                if src >= n {
                    break;
                }
                let mut w = self.words[src] >> r;
                if r != 0 && src + 1 < n {
                    w |= self.words[src + 1] << (WORD_BITS - r);
                }
                *out = w;
            }
        } else {
            for (k, out) in words.iter_mut().enumerate().skip(q) {
                let src = k - q;
                let mut w = self.words[src] << r;
                if r != 0 && src >= 1 {
                    w |= self.words[src - 1] >> (WORD_BITS - r);
                }
                *out = w;
            }
        }
        let mut out = BitVec { words, len };
        if offset >= 0 {
            out.set_range(len - shift..len);
        } else {
            out.set_range(0..shift);
        }
        out.clear_tail();
        out
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    /// `self |= a ^ b`, word by word.
    pub fn or_xor_assign(&mut self, a: &BitVec, b: &BitVec) {
        debug_assert!(self.len == a.len && a.len == b.len);
        for ((out, x), y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            *out |= *x ^ *y;
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= low_mask(rem);
            }
        }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseBitVecError(pub char);

impl fmt::Display for ParseBitVecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid bit character {:?}", self.0)
    }
}

impl std::error::Error for ParseBitVecError {}

/// Parses a string of `0`/`1`, leftmost character is position 0.
impl FromStr for BitVec {
    type Err = ParseBitVecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ParseBitVecError(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BitVec::from_bits(bits))
    }
}
