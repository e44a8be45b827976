//! Filter-versus-oracle evaluation.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::dataset::{PairDataset, SeqPair};
use super::HarnessError;
use crate::align_oracle::banded_edit_distance;
use crate::magnet::magnet_filter;
use crate::shouji::{shouji_filter, DEFAULT_WIDTH};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKind {
    Shouji { width: usize },
    Magnet,
    /// The banded oracle itself; useful as a reference run.
    Oracle,
}

impl FilterKind {
    pub fn name(&self) -> &'static str {
        match self {
            FilterKind::Shouji { .. } => "shouji",
            FilterKind::Magnet => "magnet",
            FilterKind::Oracle => "oracle",
        }
    }

    pub fn width(&self) -> Option<usize> {
        match self {
            FilterKind::Shouji { width } => Some(*width),
            _ => None,
        }
    }

    /// Accept flag and edit estimate for one pair. The oracle reports no
    /// estimate when the distance is beyond `e`.
    pub fn decide(&self, pair: &SeqPair, e: usize) -> Result<(bool, Option<usize>), HarnessError> {
        let (p, t) = (&pair.pattern, &pair.text);
        Ok(match *self {
            FilterKind::Shouji { width } => {
                let d = shouji_filter(p, t, e, width)?;
                (d.accept, Some(d.edit_estimate))
            }
            FilterKind::Magnet => {
                let d = magnet_filter(p, t, e)?;
                (d.accept, Some(d.edit_estimate))
            }
            FilterKind::Oracle => {
                let v = banded_edit_distance(p, t, e)?;
                (v.within_threshold(), v.distance)
            }
        })
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FilterKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "shouji" => Ok(FilterKind::Shouji {
                width: DEFAULT_WIDTH,
            }),
            "magnet" => Ok(FilterKind::Magnet),
            "oracle" => Ok(FilterKind::Oracle),
            other => Err(HarnessError::InvalidParameters(format!(
                "unknown filter {other:?}"
            ))),
        }
    }
}

/// Per-pair result, in input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairOutcome {
    pub accept: bool,
    pub edit_estimate: Option<usize>,
    /// Banded oracle distance, `None` when it exceeds the threshold.
    pub oracle_distance: Option<usize>,
}

impl PairOutcome {
    pub fn similar(&self) -> bool {
        self.oracle_distance.is_some()
    }
}

/// Confusion counts of a filter against the oracle. Field names are the
/// JSON report keys.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub filter: String,
    pub width: Option<usize>,
    pub e: usize,
    pub total: usize,
    pub oracle_accepted: usize,
    pub oracle_rejected: usize,
    pub filter_accepted: usize,
    pub filter_rejected: usize,
    pub falsely_accepted: usize,
    pub falsely_rejected: usize,
    pub fa_rate: f64,
    pub fr_rate: f64,
}

fn rate(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl EvalReport {
    pub fn from_outcomes(filter: FilterKind, e: usize, outcomes: &[PairOutcome]) -> Self {
        let mut r = EvalReport {
            filter: filter.name().to_string(),
            width: filter.width(),
            e,
            total: outcomes.len(),
            oracle_accepted: 0,
            oracle_rejected: 0,
            filter_accepted: 0,
            filter_rejected: 0,
            falsely_accepted: 0,
            falsely_rejected: 0,
            fa_rate: 0.0,
            fr_rate: 0.0,
        };
        for o in outcomes {
            match (o.similar(), o.accept) {
                (true, true) => {
                    r.oracle_accepted += 1;
                    r.filter_accepted += 1;
                }
                (true, false) => {
                    r.oracle_accepted += 1;
                    r.filter_rejected += 1;
                    r.falsely_rejected += 1;
                }
                (false, true) => {
                    r.oracle_rejected += 1;
                    r.filter_accepted += 1;
                    r.falsely_accepted += 1;
                }
                (false, false) => {
                    r.oracle_rejected += 1;
                    r.filter_rejected += 1;
                }
            }
        }
        r.fa_rate = rate(r.falsely_accepted, r.oracle_rejected);
        r.fr_rate = rate(r.falsely_rejected, r.oracle_accepted);
        r
    }

    /// Checks the arithmetic identities every report must satisfy.
    pub fn check_identities(&self) -> Result<(), String> {
        let checks = [
            (self.falsely_accepted <= self.oracle_rejected, "falsely_accepted <= oracle_rejected"),
            (self.falsely_rejected <= self.oracle_accepted, "falsely_rejected <= oracle_accepted"),
            (self.oracle_accepted + self.oracle_rejected == self.total, "oracle counts sum to total"),
            (self.filter_accepted + self.filter_rejected == self.total, "filter counts sum to total"),
            (
                self.filter_accepted + self.falsely_rejected == self.oracle_accepted + self.falsely_accepted,
                "filter_accepted = oracle_accepted - falsely_rejected + falsely_accepted",
            ),
            ((0.0..=1.0).contains(&self.fa_rate), "fa_rate in [0,1]"),
            ((0.0..=1.0).contains(&self.fr_rate), "fr_rate in [0,1]"),
            (self.fa_rate == rate(self.falsely_accepted, self.oracle_rejected), "fa_rate ratio"),
            (self.fr_rate == rate(self.falsely_rejected, self.oracle_accepted), "fr_rate ratio"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, what)) => Err(format!("report identity violated: {what}")),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn outcome(pair: &SeqPair, e: usize, filter: FilterKind) -> Result<PairOutcome, HarnessError> {
    let (accept, edit_estimate) = filter.decide(pair, e)?;
    let oracle_distance = match filter {
        FilterKind::Oracle => edit_estimate,
        _ => banded_edit_distance(&pair.pattern, &pair.text, e)?.distance,
    };
    Ok(PairOutcome {
        accept,
        edit_estimate,
        oracle_distance,
    })
}

/// Applies `f` to every pair. `threads <= 1` runs on the calling thread;
/// otherwise a dedicated pool is used. Results are always in input order.
fn map_pairs<T, F>(dataset: &PairDataset, threads: usize, f: F) -> Result<Vec<T>, HarnessError>
where
    T: Send,
    F: Fn(&SeqPair) -> Result<T, HarnessError> + Sync + Send,
{
    let pairs = dataset.pairs();
    if threads <= 1 {
        return pairs.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|err| HarnessError::InvalidParameters(err.to_string()))?;
    pool.install(|| pairs.par_iter().map(f).collect())
}

/// Filter decisions only, as `(accept, edit_estimate)`.
pub fn decide_pairs(
    dataset: &PairDataset,
    e: usize,
    filter: FilterKind,
    threads: usize,
) -> Result<Vec<(bool, Option<usize>)>, HarnessError> {
    map_pairs(dataset, threads, |p| filter.decide(p, e))
}

/// Runs oracle and filter on every pair.
pub fn evaluate_pairs(
    dataset: &PairDataset,
    e: usize,
    filter: FilterKind,
    threads: usize,
) -> Result<Vec<PairOutcome>, HarnessError> {
    map_pairs(dataset, threads, |p| outcome(p, e, filter))
}

pub fn evaluate(
    dataset: &PairDataset,
    e: usize,
    filter: FilterKind,
    threads: usize,
) -> Result<EvalReport, HarnessError> {
    let outcomes = evaluate_pairs(dataset, e, filter, threads)?;
    Ok(EvalReport::from_outcomes(filter, e, &outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::dataset::{generate_pairs, EditSpec, GeneratorConfig};

    const SHOUJI: FilterKind = FilterKind::Shouji { width: 4 };

    fn gen(seed: u64, count: usize, len: usize, edits: EditSpec) -> PairDataset {
        generate_pairs(&GeneratorConfig {
            seed,
            count,
            len,
            edits,
        })
        .unwrap()
    }

    #[test]
    fn identical_pairs_at_zero_threshold() {
        let ds = gen(1, 50, 30, EditSpec::Constant(0));
        let r = evaluate(&ds, 0, SHOUJI, 1).unwrap();
        assert_eq!((r.fa_rate, r.fr_rate), (0.0, 0.0));
        assert_eq!(r.filter_accepted, 50);
        r.check_identities().unwrap();
    }

    #[test]
    fn all_mismatch_pairs_rejected() {
        let tsv = "AAAAAAAAAA\tCCCCCCCCCC\n".repeat(5);
        let ds = crate::harness::load_pairs(tsv.as_bytes(), "mem").unwrap();
        let r = evaluate(&ds, 3, SHOUJI, 1).unwrap();
        assert_eq!(r.filter_rejected, r.total);
        assert_eq!(r.fa_rate, 0.0);
        r.check_identities().unwrap();
    }

    #[test]
    fn within_threshold_plantings_never_rejected() {
        let ds = gen(42, 3_000, 60, EditSpec::Uniform { lo: 0, hi: 2 });
        let r = evaluate(&ds, 2, SHOUJI, 1).unwrap();
        r.check_identities().unwrap();
        assert_eq!(r.oracle_rejected, 0);
        assert_eq!(r.fr_rate, 0.0);
    }

    #[test]
    fn mixed_set_reports_false_accepts() {
        let ds = gen(42, 2_000, 60, EditSpec::Uniform { lo: 0, hi: 8 });
        for filter in [SHOUJI, FilterKind::Magnet] {
            let r = evaluate(&ds, 2, filter, 1).unwrap();
            r.check_identities().unwrap();
            assert!(r.oracle_accepted > 0 && r.oracle_rejected > 0);
            assert!(r.fa_rate > 0.0, "{r:?}");
        }
    }

    #[test]
    fn oracle_against_itself_is_perfect() {
        let ds = gen(3, 300, 50, EditSpec::Uniform { lo: 0, hi: 6 });
        let r = evaluate(&ds, 3, FilterKind::Oracle, 1).unwrap();
        assert_eq!(r.falsely_accepted + r.falsely_rejected, 0);
    }

    #[test]
    fn threads_do_not_change_results() {
        let ds = gen(9, 500, 80, EditSpec::Uniform { lo: 0, hi: 10 });
        for filter in [SHOUJI, FilterKind::Magnet] {
            let a = evaluate_pairs(&ds, 4, filter, 1).unwrap();
            let b = evaluate_pairs(&ds, 4, filter, 4).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rates_are_zero_on_empty_denominators() {
        let r = EvalReport::from_outcomes(SHOUJI, 1, &[]);
        assert_eq!((r.fa_rate, r.fr_rate), (0.0, 0.0));
        r.check_identities().unwrap();
    }

    #[test]
    fn json_keys() {
        let r = EvalReport::from_outcomes(FilterKind::Magnet, 2, &[]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        for k in [
            "filter", "width", "e", "total", "oracle_accepted", "oracle_rejected",
            "filter_accepted", "filter_rejected", "falsely_accepted", "falsely_rejected",
            "fa_rate", "fr_rate",
        ] {
            assert!(keys.contains(&k.to_string()), "missing {k}");
        }
        assert_eq!(v["width"], serde_json::Value::Null);
    }

    #[test]
    fn filter_names_parse() {
        assert_eq!("shouji".parse::<FilterKind>().unwrap(), SHOUJI);
        assert_eq!("magnet".parse::<FilterKind>().unwrap(), FilterKind::Magnet);
        assert!("gatekeeper".parse::<FilterKind>().is_err());
    }
}
