//! `prefilter` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::bench::{bench_table, scaling_table, write_csv};
use super::dataset::{generate_pairs, load_pairs, EditSpec, GeneratorConfig, PairDataset};
use super::eval::{decide_pairs, evaluate_pairs, EvalReport, FilterKind, PairOutcome};
use super::HarnessError;
use crate::shouji::{DEFAULT_WIDTH, MAX_WIDTH, MIN_WIDTH};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "prefilter", version, about = "Pre-alignment filtering for equal-length DNA pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one accept (1) / reject (0) line per pair.
    Filter(FilterArgs),
    /// Filter and score every pair against the banded oracle.
    Eval(EvalArgs),
    /// Write a seeded synthetic pair file.
    Gen(GenArgs),
    /// Time a filter and print a CSV scaling table.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algo {
    Shouji,
    Magnet,
    Oracle,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "threshold")]
struct Threshold {
    /// Edit-distance threshold.
    #[arg(long = "e", value_name = "N")]
    absolute: Option<usize>,
    /// Threshold as a percentage of the sequence length (floored).
    #[arg(long = "e-percent", value_name = "P")]
    percent: Option<f64>,
}

impl Threshold {
    fn resolve(&self, m: usize) -> Result<usize, HarnessError> {
        match (self.absolute, self.percent) {
            (Some(e), _) => Ok(e),
            (None, Some(p)) if p.is_finite() && p >= 0.0 => Ok((m as f64 * p / 100.0).floor() as usize),
            (None, Some(p)) => Err(HarnessError::InvalidParameters(format!("bad percentage {p}"))),
            (None, None) => unreachable!("clap enforces the threshold group"),
        }
    }
}

#[derive(Debug, Args)]
struct FilterOpts {
    #[arg(long, value_enum, default_value = "shouji")]
    algo: Algo,
    #[command(flatten)]
    threshold: Threshold,
    /// Search window width (Shouji only).
    #[arg(long, default_value_t = DEFAULT_WIDTH, value_parser = parse_width)]
    width: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl FilterOpts {
    fn kind(&self) -> FilterKind {
        match self.algo {
            Algo::Shouji => FilterKind::Shouji { width: self.width },
            Algo::Magnet => FilterKind::Magnet,
            Algo::Oracle => FilterKind::Oracle,
        }
    }
}

fn parse_width(s: &str) -> Result<usize, String> {
    let w: usize = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if (MIN_WIDTH..=MAX_WIDTH).contains(&w) {
        Ok(w)
    } else {
        Err(format!("width must be in {MIN_WIDTH}..={MAX_WIDTH}"))
    }
}

#[derive(Debug, Args)]
struct GenOpts {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long = "len", value_name = "M")]
    len: Option<usize>,
    /// Planted edits per pair: `K` or `LO-HI`.
    #[arg(long, value_name = "SPEC")]
    edits: Option<String>,
}

impl GenOpts {
    fn config(&self) -> Result<GeneratorConfig, CliError> {
        let (Some(count), Some(len), Some(edits)) = (self.count, self.len, self.edits.as_deref()) else {
            return Err(CliError::Usage(
                "need --pairs FILE, or all of --count, --len and --edits".into(),
            ));
        };
        let edits: EditSpec = edits.parse()?;
        Ok(GeneratorConfig {
            seed: self.seed,
            count,
            len,
            edits,
        })
    }
}

#[derive(Debug, Args)]
struct FilterArgs {
    #[arg(long, value_name = "FILE")]
    pairs: PathBuf,
    #[command(flatten)]
    opts: FilterOpts,
    /// Append edit estimate and oracle distance columns.
    #[arg(long)]
    verbose: bool,
    /// Also score against the oracle and write the JSON report here.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_name = "FILE")]
    pairs: Option<PathBuf>,
    #[command(flatten)]
    gen: GenOpts,
    #[command(flatten)]
    opts: FilterOpts,
    #[arg(long)]
    verbose: bool,
    /// JSON report destination (stderr when omitted).
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(flatten)]
    gen: GenOpts,
    /// Output file (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    pairs: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_name = "FILE")]
    pairs: Option<PathBuf>,
    #[command(flatten)]
    gen: GenOpts,
    #[command(flatten)]
    opts: FilterOpts,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    /// CSV destination (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(HarnessError),
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        CliError::Data(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.into())
    }
}

fn read_dataset(path: &Path) -> Result<PairDataset, HarnessError> {
    let file = File::open(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    load_pairs(BufReader::new(file), &path.display().to_string())
}

fn dataset_from(pairs: Option<&Path>, gen: &GenOpts) -> Result<PairDataset, CliError> {
    match pairs {
        Some(path) => Ok(read_dataset(path)?),
        None => Ok(generate_pairs(&gen.config()?)?),
    }
}

fn fmt_opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |d| d.to_string())
}

fn write_outcomes(out: &mut dyn Write, outcomes: &[PairOutcome], verbose: bool) -> std::io::Result<()> {
    for o in outcomes {
        if verbose {
            writeln!(
                out,
                "{}\t{}\t{}",
                o.accept as u8,
                fmt_opt(o.edit_estimate),
                fmt_opt(o.oracle_distance)
            )?;
        } else {
            writeln!(out, "{}", o.accept as u8)?;
        }
    }
    Ok(())
}

fn write_report(report: &EvalReport, path: Option<&Path>, err: &mut dyn Write) -> std::io::Result<()> {
    let json = report.to_json();
    match path {
        Some(p) => std::fs::write(p, json + "\n"),
        None => writeln!(err, "{json}"),
    }
}

fn cmd_filter(args: &FilterArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let dataset = read_dataset(&args.pairs)?;
    let e = args.opts.threshold.resolve(dataset.m())?;
    let kind = args.opts.kind();
    let accepted = if args.verbose || args.report.is_some() {
        let outcomes = evaluate_pairs(&dataset, e, kind, args.opts.threads)?;
        write_outcomes(out, &outcomes, args.verbose)?;
        if let Some(path) = &args.report {
            write_report(&EvalReport::from_outcomes(kind, e, &outcomes), Some(path), err)?;
        }
        outcomes.iter().filter(|o| o.accept).count()
    } else {
        let decisions = decide_pairs(&dataset, e, kind, args.opts.threads)?;
        for (accept, _) in &decisions {
            writeln!(out, "{}", *accept as u8)?;
        }
        decisions.iter().filter(|d| d.0).count()
    };
    writeln!(
        err,
        "{kind} e={e} m={} pairs={} accepted={accepted} rejected={}",
        dataset.m(),
        dataset.len(),
        dataset.len() - accepted
    )?;
    Ok(())
}

fn cmd_eval(args: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let dataset = dataset_from(args.pairs.as_deref(), &args.gen)?;
    let e = args.opts.threshold.resolve(dataset.m())?;
    let kind = args.opts.kind();
    let outcomes = evaluate_pairs(&dataset, e, kind, args.opts.threads)?;
    write_outcomes(out, &outcomes, args.verbose)?;
    let report = EvalReport::from_outcomes(kind, e, &outcomes);
    write_report(&report, args.report.as_deref(), err)?;
    Ok(())
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let dataset = generate_pairs(&args.gen.config()?)?;
    let tsv = dataset.to_tsv();
    match &args.pairs {
        Some(path) => std::fs::write(path, tsv)?,
        None => out.write_all(tsv.as_bytes())?,
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let kind = args.opts.kind();
    let rows = match &args.pairs {
        Some(path) => {
            let dataset = read_dataset(path)?;
            let e = args.opts.threshold.resolve(dataset.m())?;
            bench_table(&[(&dataset, e)], kind, args.repeats)?
        }
        None => {
            let cfg = args.gen.config()?;
            let e = args.opts.threshold.resolve(cfg.len)?;
            scaling_table(kind, cfg.seed, cfg.count, cfg.len, e, cfg.edits, args.repeats)?
        }
    };
    match &args.report {
        Some(path) => write_csv(&rows, File::create(path)?)?,
        None => write_csv(&rows, out)?,
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Filter(a) => cmd_filter(a, out, err),
        Command::Eval(a) => cmd_eval(a, out, err),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    };
    let _ = out.flush();
    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(CliError::Data(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DATA
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_cli(std::iter::once("prefilter").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn percent_threshold_floors() {
        let t = Threshold {
            absolute: None,
            percent: Some(5.0),
        };
        assert_eq!(t.resolve(100).unwrap(), 5);
        let t = Threshold {
            absolute: None,
            percent: Some(2.0),
        };
        assert_eq!(t.resolve(150).unwrap(), 3);
        assert_eq!(t.resolve(149).unwrap(), 2);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(&["filter", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(run(&[]).0, EXIT_USAGE);
        // both threshold forms at once
        assert_eq!(run(&["filter", "--pairs", "x", "--e", "1", "--e-percent", "2"]).0, EXIT_USAGE);
        assert_eq!(run(&["filter", "--pairs", "x", "--e", "1", "--width", "9"]).0, EXIT_USAGE);
        let (code, _, err) = run(&["eval", "--e", "1", "--count", "3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--edits"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("filter"));
    }

    #[test]
    fn gen_to_stdout() {
        let (code, out, _) = run(&["gen", "--seed", "1", "--count", "3", "--len", "10", "--edits", "0"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 3);
        for line in out.lines() {
            let (t, p) = line.split_once('\t').unwrap();
            assert_eq!(t, p);
        }
    }

    #[test]
    fn invalid_generator_is_data_error() {
        let (code, _, _) = run(&["gen", "--count", "3", "--len", "4", "--edits", "9"]);
        assert_eq!(code, EXIT_DATA);
    }
}
