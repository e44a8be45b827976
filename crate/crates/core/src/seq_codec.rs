//! DNA ingestion: validation, case normalization and 2-bit packing.
//!
//! Bases are stored as two parallel bit-planes (`hi`, `lo`) with
//! A=00, C=01, G=10, T=11, plus an N-mask plane. An N compares unequal to
//! every base, including another N.

use crate::bitvec::BitVec;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("empty sequence")]
    EmptySequence,
    #[error("illegal character {:?} at position {position}", *byte as char)]
    IllegalCharacter { position: usize, byte: u8 },
}

/// Base code used by [`PackedSequence::codes`] for N.
pub const N_CODE: u8 = 4;

const ALPHABET: [u8; 4] = *b"ACGT";

#[inline]
fn encode_byte(byte: u8) -> Option<u8> {
    match byte {
        b'A' | b'a' => Some(0),
        b'C' | b'c' => Some(1),
        b'G' | b'g' => Some(2),
        b'T' | b't' => Some(3),
        b'N' | b'n' => Some(N_CODE),
        _ => None,
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PackedSequence {
    hi: BitVec,
    lo: BitVec,
    n_mask: BitVec,
}

impl PackedSequence {
    pub fn len(&self) -> usize {
        self.hi.len()
    }

    /// Always false; construction rejects empty input.
    pub fn is_empty(&self) -> bool {
        self.hi.is_empty()
    }

    pub fn hi_plane(&self) -> &BitVec {
        &self.hi
    }

    pub fn lo_plane(&self) -> &BitVec {
        &self.lo
    }

    pub fn n_mask(&self) -> &BitVec {
        &self.n_mask
    }

    /// 2-bit code of base `i`, or `None` for N.
    pub fn code(&self, i: usize) -> Option<u8> {
        if self.n_mask.get(i) {
            None
        } else {
            Some(((self.hi.get(i) as u8) << 1) | self.lo.get(i) as u8)
        }
    }

    /// Unpacked codes, N mapped to [`N_CODE`].
    pub fn codes(&self) -> Vec<u8> {
        (0..self.len())
            .map(|i| self.code(i).unwrap_or(N_CODE))
            .collect()
    }

    pub fn storage_bits(&self) -> usize {
        self.hi.storage_bits() + self.lo.storage_bits() + self.n_mask.storage_bits()
    }
}

impl std::fmt::Debug for PackedSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PackedSequence({})", decode(self))
    }
}

pub fn validate_and_encode(raw: &[u8]) -> Result<PackedSequence, CodecError> {
    if raw.is_empty() {
        return Err(CodecError::EmptySequence);
    }
    let mut codes = Vec::with_capacity(raw.len());
    for (position, &byte) in raw.iter().enumerate() {
        codes.push(encode_byte(byte).ok_or(CodecError::IllegalCharacter { position, byte })?);
    }
    let hi = BitVec::from_bits(codes.iter().map(|&c| c != N_CODE && c & 2 != 0));
    let lo = BitVec::from_bits(codes.iter().map(|&c| c != N_CODE && c & 1 != 0));
    let n_mask = BitVec::from_bits(codes.iter().map(|&c| c == N_CODE));
    Ok(PackedSequence { hi, lo, n_mask })
}

pub fn decode(seq: &PackedSequence) -> String {
    (0..seq.len())
        .map(|i| match seq.code(i) {
            Some(c) => ALPHABET[c as usize] as char,
            None => 'N',
        })
        .collect()
}

impl std::str::FromStr for PackedSequence {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        validate_and_encode(s.as_bytes())
    }
}
