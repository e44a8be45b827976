//! Datasets, evaluation, benchmarks and the command-line front end.

pub mod bench;
pub mod cli;
pub mod dataset;
pub mod eval;

use thiserror::Error;

use crate::FilterError;

pub use bench::{bench_table, median_time, scaling_table, write_csv, BenchRow};
pub use cli::run_cli;
pub use dataset::{generate_pairs, load_pairs, EditSpec, GeneratorConfig, PairDataset, SeqPair};
pub use eval::{decide_pairs, evaluate, evaluate_pairs, EvalReport, FilterKind, PairOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: sequence length differs from the dataset length")]
    LengthMismatch { line: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error("i/o error: {0}")]
    Io(String),
}

impl HarnessError {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        HarnessError::Parse {
            line,
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e.to_string())
    }
}
