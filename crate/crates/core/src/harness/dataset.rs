//! Pair datasets: TSV ingestion and seeded synthetic generation.

use std::fmt::Write as _;
use std::io::BufRead;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HarnessError;
use crate::seq_codec::{decode, validate_and_encode, PackedSequence};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqPair {
    pub text: PackedSequence,
    pub pattern: PackedSequence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDataset {
    pairs: Vec<SeqPair>,
    source: String,
    m: usize,
}

impl PairDataset {
    pub fn new(pairs: Vec<SeqPair>, source: impl Into<String>) -> Result<Self, HarnessError> {
        let first = pairs
            .first()
            .ok_or_else(|| HarnessError::parse(0, "no pairs"))?;
        let m = first.text.len();
        for (idx, pair) in pairs.iter().enumerate() {
            if pair.text.len() != m || pair.pattern.len() != m {
                return Err(HarnessError::LengthMismatch { line: idx + 1 });
            }
        }
        Ok(PairDataset {
            pairs,
            source: source.into(),
            m,
        })
    }

    pub fn pairs(&self) -> &[SeqPair] {
        &self.pairs
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Common sequence length.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Serializes back to the `TEXT<TAB>PATTERN<LF>` format.
    pub fn to_tsv(&self) -> String {
        let mut out = String::with_capacity(self.len() * (2 * self.m + 2));
        for pair in &self.pairs {
            let _ = writeln!(out, "{}\t{}", decode(&pair.text), decode(&pair.pattern));
        }
        out
    }
}

/// Reads one `TEXT<TAB>PATTERN` pair per line. Line numbers in errors are
/// 1-based. Every pair must share the first pair's length.
pub fn load_pairs<R: BufRead>(reader: R, source: &str) -> Result<PairDataset, HarnessError> {
    let mut pairs = Vec::new();
    let mut m = None;
    for (idx, line) in reader.split(b'\n').enumerate() {
        let line_no = idx + 1;
        let mut line = line.map_err(|e| HarnessError::parse(line_no, e.to_string()))?;
        if line.last() == Some(&b'\r') {
            line.pop();
        }
        let fields: Vec<&[u8]> = line.split(|&b| b == b'\t').collect();
        if fields.len() != 2 {
            return Err(HarnessError::parse(
                line_no,
                format!("expected 2 tab-separated columns, found {}", fields.len()),
            ));
        }
        let text = validate_and_encode(fields[0])
            .map_err(|e| HarnessError::parse(line_no, format!("text: {e}")))?;
        let pattern = validate_and_encode(fields[1])
            .map_err(|e| HarnessError::parse(line_no, format!("pattern: {e}")))?;
        let expected = *m.get_or_insert(text.len());
        if text.len() != expected || pattern.len() != expected {
            return Err(HarnessError::LengthMismatch { line: line_no });
        }
        pairs.push(SeqPair { text, pattern });
    }
    if pairs.is_empty() {
        return Err(HarnessError::parse(0, "no pairs"));
    }
    PairDataset::new(pairs, source)
}

/// Distribution of planted edits per pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EditSpec {
    Constant(usize),
    /// Uniform over `lo..=hi`.
    Uniform { lo: usize, hi: usize },
}

impl EditSpec {
    pub fn max(&self) -> usize {
        match *self {
            EditSpec::Constant(k) => k,
            EditSpec::Uniform { hi, .. } => hi,
        }
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> usize {
        match *self {
            EditSpec::Constant(k) => k,
            EditSpec::Uniform { lo, hi } => rng.gen_range(lo..=hi),
        }
    }
}

/// Accepts `K` or `LO-HI`.
impl FromStr for EditSpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HarnessError::InvalidParameters(format!("bad edit spec {s:?}, expected K or LO-HI"));
        match s.split_once('-') {
            None => s.trim().parse().map(EditSpec::Constant).map_err(|_| bad()),
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| bad())?;
                let hi: usize = hi.trim().parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                Ok(EditSpec::Uniform { lo, hi })
            }
        }
    }
}

impl std::fmt::Display for EditSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EditSpec::Constant(k) => write!(f, "{k}"),
            EditSpec::Uniform { lo, hi } => write!(f, "{lo}-{hi}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub count: usize,
    pub len: usize,
    pub edits: EditSpec,
}

const BASES: [u8; 4] = *b"ACGT";

/// Random text plus a pattern carrying at most the drawn number of edits.
///
/// Substitutions cost one unit of the budget. An insertion or deletion costs
/// two: the indel itself and the trim or pad at the end that restores the
/// length. So the drawn count bounds the true edit distance from above.
pub fn generate_pairs(config: &GeneratorConfig) -> Result<PairDataset, HarnessError> {
    let GeneratorConfig {
        seed,
        count,
        len,
        edits,
    } = *config;
    if len == 0 || count == 0 {
        return Err(HarnessError::InvalidParameters(
            "count and length must be at least 1".into(),
        ));
    }
    if edits.max() > len {
        return Err(HarnessError::InvalidParameters(format!(
            "edit count {} exceeds length {len}",
            edits.max()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(count);
    for _ in 0..count {
        let text: Vec<u8> = (0..len).map(|_| BASES[rng.gen_range(0..4)]).collect();
        let budget = edits.draw(&mut rng);
        let pattern = plant_edits(&mut rng, &text, budget);
        pairs.push(SeqPair {
            text: validate_and_encode(&text).expect("generated bases are valid"),
            pattern: validate_and_encode(&pattern).expect("generated bases are valid"),
        });
    }
    PairDataset::new(pairs, format!("gen:seed={seed},count={count},len={len},edits={edits}"))
}

fn plant_edits<R: Rng>(rng: &mut R, text: &[u8], mut budget: usize) -> Vec<u8> {
    let len = text.len();
    let mut seq = text.to_vec();
    while budget > 0 {
        let op = if budget >= 2 { rng.gen_range(0..3) } else { 0 };
        match op {
            0 => {
                let i = rng.gen_range(0..seq.len());
                let old = seq[i];
                seq[i] = loop {
                    let b = BASES[rng.gen_range(0..4)];
                    if b != old {
                        break b;
                    }
                };
                budget -= 1;
            }
            1 => {
                let i = rng.gen_range(0..=seq.len());
                seq.insert(i, BASES[rng.gen_range(0..4)]);
                budget -= 2;
            }
            _ => {
                if seq.len() > 1 {
                    let i = rng.gen_range(0..seq.len());
                    seq.remove(i);
                }
                budget -= 2;
            }
        }
    }
    seq.truncate(len);
    while seq.len() < len {
        seq.push(BASES[rng.gen_range(0..4)]);
    }
    seq
}
