//! Ground-truth unit-cost Levenshtein distance.
//!
//! `full_edit_distance` is the plain quadratic DP; `banded_edit_distance`
//! restricts it to the 2E+1 diagonals around the main diagonal and is what
//! the evaluation harness uses to label pairs. An N costs a substitution
//! against anything, matching the neighborhood map.

use crate::seq_codec::{PackedSequence, N_CODE};
use crate::FilterError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlignmentVerdict {
    /// Exact distance when it is within the threshold, `None` otherwise.
    pub distance: Option<usize>,
}

impl AlignmentVerdict {
    pub fn within_threshold(&self) -> bool {
        self.distance.is_some()
    }
}

#[inline]
fn sub_cost(a: u8, b: u8) -> usize {
    (a != b || a == N_CODE) as usize
}

pub fn full_edit_distance(pattern: &PackedSequence, text: &PackedSequence) -> usize {
    levenshtein(&pattern.codes(), &text.codes())
}

fn levenshtein(a: &[u8], b: &[u8]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            cur[j + 1] = (prev[j] + sub_cost(ca, cb))
                .min(prev[j + 1] + 1)
                .min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Banded DP over cells with `|i - j| <= e`; cells outside the band are
/// unreachable. Stops early once every cell of a row exceeds `e`.
pub fn banded_edit_distance(
    pattern: &PackedSequence,
    text: &PackedSequence,
    e: usize,
) -> Result<AlignmentVerdict, FilterError> {
    let m = text.len();
    if pattern.len() != m {
        return Err(FilterError::LengthMismatch {
            pattern: pattern.len(),
            text: m,
        });
    }
    Ok(banded_codes(&pattern.codes(), &text.codes(), e))
}

fn banded_codes(p: &[u8], t: &[u8], e: usize) -> AlignmentVerdict {
    let m = p.len();
    let e = e.min(m);
    let inf = usize::MAX / 2;
    let width = 2 * e + 1;
    // row[k] holds cell (i, j) with j = i + k - e
    let mut prev = vec![inf; width];
    let mut cur = vec![inf; width];
    for (k, cell) in prev.iter_mut().enumerate().skip(e) {
        *cell = k - e;
    }
    for i in 1..=m {
        let mut row_min = inf;
        for k in 0..width {
            let j = (i + k) as isize - e as isize;
            if j < 0 || j > m as isize {
                cur[k] = inf;
                continue;
            }
            let j = j as usize;
            let mut best = inf;
            if j == 0 {
                best = i;
            } else {
                best = best.min(prev[k] + sub_cost(p[i - 1], t[j - 1]));
                if k > 0 {
                    best = best.min(cur[k - 1] + 1);
                }
            }
            if k + 1 < width {
                best = best.min(prev[k + 1] + 1);
            }
            cur[k] = best;
            row_min = row_min.min(best);
        }
        if row_min > e {
            return AlignmentVerdict { distance: None };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    let d = prev[e];
    AlignmentVerdict {
        distance: (d <= e).then_some(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq_codec::validate_and_encode;
    use proptest::prelude::*;

    fn seq(s: &str) -> PackedSequence {
        validate_and_encode(s.as_bytes()).unwrap()
    }

    /// Exhaustive recursion, only usable for very short strings.
    fn brute(a: &[u8], b: &[u8]) -> usize {
        match (a.split_first(), b.split_first()) {
            (None, _) => b.len(),
            (_, None) => a.len(),
            (Some((x, ra)), Some((y, rb))) => {
                let sub = brute(ra, rb) + (x != y || *x == b'N') as usize;
                sub.min(brute(ra, b) + 1).min(brute(a, rb) + 1)
            }
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(full_edit_distance(&seq("AAAA"), &seq("AAAA")), 0);
        assert_eq!(full_edit_distance(&seq("ACGT"), &seq("ACGA")), 1);
        assert_eq!(full_edit_distance(&seq("ACGT"), &seq("CGT")), 1);
        assert_eq!(full_edit_distance(&seq("N"), &seq("N")), 1);
    }

    #[test]
    fn figure_pair_distance() {
        // The figure pair needs 4 edits (one deletion, two substitutions,
        // one insertion); cross-checked against exhaustive recursion.
        let (p, t) = ("GGTGAGAGTTGT", "GGTGCAGAGCTC");
        assert_eq!(brute(p.as_bytes(), t.as_bytes()), 4);
        assert_eq!(full_edit_distance(&seq(p), &seq(t)), 4);
        assert_eq!(
            banded_edit_distance(&seq(p), &seq(t), 3).unwrap(),
            AlignmentVerdict { distance: None }
        );
        assert_eq!(banded_edit_distance(&seq(p), &seq(t), 4).unwrap().distance, Some(4));
        assert!(!banded_edit_distance(&seq(p), &seq(t), 2).unwrap().within_threshold());
    }

    #[test]
    fn banded_identity_and_errors() {
        let s = seq("ACGTACGT");
        assert_eq!(banded_edit_distance(&s, &s, 0).unwrap().distance, Some(0));
        assert_eq!(
            banded_edit_distance(&seq("ACG"), &s, 2),
            Err(FilterError::LengthMismatch { pattern: 3, text: 8 })
        );
        let a = seq("AAAA");
        let c = seq("CCCC");
        assert_eq!(banded_edit_distance(&a, &c, 10).unwrap().distance, Some(4));
        assert_eq!(banded_edit_distance(&a, &c, 3).unwrap().distance, None);
    }

    fn equal_pair(max_len: usize) -> impl Strategy<Value = (String, String)> {
        (1..=max_len).prop_flat_map(|m| {
            let s = || proptest::string::string_regex(&format!("[ACGTN]{{{m}}}")).unwrap();
            (s(), s())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2_000))]

        #[test]
        fn full_matches_brute_force(a in "[ACGN]{0,7}", b in "[ACGN]{0,7}") {
            prop_assert_eq!(levenshtein(
                &a.bytes().map(|c| if c == b'N' { N_CODE } else { c }).collect::<Vec<_>>(),
                &b.bytes().map(|c| if c == b'N' { N_CODE } else { c }).collect::<Vec<_>>(),
            ), brute(a.as_bytes(), b.as_bytes()));
        }

        #[test]
        fn banded_agrees_with_full((p, t) in equal_pair(64), e in 0usize..=10) {
            let (p, t) = (seq(&p), seq(&t));
            let full = full_edit_distance(&p, &t);
            let verdict = banded_edit_distance(&p, &t, e).unwrap();
            if full <= e {
                prop_assert_eq!(verdict.distance, Some(full));
            } else {
                prop_assert_eq!(verdict.distance, None);
            }
        }

        #[test]
        fn metric_axioms(a in "[ACGTN]{1,24}", b in "[ACGTN]{1,24}", c in "[ACGTN]{1,24}") {
            let (a, b, c) = (seq(&a), seq(&b), seq(&c));
            prop_assert_eq!(full_edit_distance(&a, &b), full_edit_distance(&b, &a));
            prop_assert!(full_edit_distance(&a, &c) <= full_edit_distance(&a, &b) + full_edit_distance(&b, &c));
            let self_dist = full_edit_distance(&a, &a);
            let ns = a.n_mask().count_ones();
            // N never matches, so d(a, a) counts each N once
            prop_assert!(self_dist <= ns);
        }

        #[test]
        fn identity_without_n(a in "[ACGT]{1,40}") {
            let a = seq(&a);
            prop_assert_eq!(full_edit_distance(&a, &a), 0);
        }
    }
}
