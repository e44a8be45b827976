//! Throughput measurement and length/threshold scaling tables.

use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use super::dataset::{generate_pairs, EditSpec, GeneratorConfig, PairDataset};
use super::eval::FilterKind;
use super::HarnessError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub algo: String,
    pub m: usize,
    pub e: usize,
    pub pairs: usize,
    pub repeats: usize,
    pub median_secs: f64,
    pub pairs_per_sec: f64,
    pub bases_per_sec: f64,
    /// Median time relative to the first row of the table.
    pub time_ratio: f64,
    /// Ratio predicted by the linear cost model `m * (2E + 2)`.
    pub model_ratio: f64,
}

/// Runs the filter over the whole dataset once per repeat (after one warmup
/// pass) and returns the median wall time in seconds.
pub fn median_time(
    dataset: &PairDataset,
    e: usize,
    filter: FilterKind,
    repeats: usize,
) -> Result<f64, HarnessError> {
    let run = || -> Result<usize, HarnessError> {
        let mut accepted = 0;
        for pair in dataset.pairs() {
            accepted += filter.decide(black_box(pair), e)?.0 as usize;
        }
        Ok(black_box(accepted))
    };
    run()?;
    let mut times = Vec::with_capacity(repeats.max(1));
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        run()?;
        times.push(start.elapsed().as_secs_f64());
    }
    times.sort_by(f64::total_cmp);
    Ok(times[times.len() / 2])
}

fn cost_model(m: usize, e: usize) -> f64 {
    (m * (2 * e + 2)) as f64
}

/// Measures each `(dataset, e)` case and expresses times relative to the
/// first case.
pub fn bench_table(
    cases: &[(&PairDataset, usize)],
    filter: FilterKind,
    repeats: usize,
) -> Result<Vec<BenchRow>, HarnessError> {
    let mut rows: Vec<BenchRow> = Vec::with_capacity(cases.len());
    for &(dataset, e) in cases {
        let secs = median_time(dataset, e, filter, repeats)?;
        let pairs = dataset.len();
        let m = dataset.m();
        let (base_secs, base_cost) = rows
            .first()
            .map(|r| (r.median_secs, cost_model(r.m, r.e)))
            .unwrap_or((secs, cost_model(m, e)));
        rows.push(BenchRow {
            algo: filter.name().to_string(),
            m,
            e,
            pairs,
            repeats,
            median_secs: secs,
            pairs_per_sec: pairs as f64 / secs,
            bases_per_sec: (pairs * m * 2) as f64 / secs,
            time_ratio: secs / base_secs,
            model_ratio: cost_model(m, e) / base_cost,
        });
    }
    Ok(rows)
}

/// Synthetic scaling sweep: `(m, e)`, `(2m, e)` and `(m, 2e + 1)`. The last
/// case doubles the `2E + 2` factor of the cost model.
pub fn scaling_table(
    filter: FilterKind,
    seed: u64,
    count: usize,
    m: usize,
    e: usize,
    edits: EditSpec,
    repeats: usize,
) -> Result<Vec<BenchRow>, HarnessError> {
    let make = |len: usize| {
        generate_pairs(&GeneratorConfig {
            seed,
            count,
            len,
            edits,
        })
    };
    let base = make(m)?;
    let doubled = make(2 * m)?;
    bench_table(&[(&base, e), (&doubled, e), (&base, 2 * e + 1)], filter, repeats)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), HarnessError> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| HarnessError::Io(e.to_string()))?;
    }
    writer.flush().map_err(|e| HarnessError::Io(e.to_string()))
}
