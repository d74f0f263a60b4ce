use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use inplace_perm::text::{parse_array, parse_perm};
use permtool::run::{generate, trial_seed};
use permtool::{bench, run_once, write_reports, Algo, Check, Config, Format, RunError, RunReport, Shape, SizeRange, Task};

/// Strictly in-place cycle leaders, array permuting and inversion, with
/// access and space counters.
#[derive(Parser, Debug)]
#[command(name = "permtool", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Report one leader per cycle.
    Leaders(RunArgs),
    /// Rearrange an array so that A[π(j)] receives the old A[j].
    Permute(RunArgs),
    /// Replace π by its inverse in place.
    Invert(RunArgs),
    /// Measure across sizes and fit the read-count exponent.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value = "logspace")]
    algo: Algo,
    /// Neighbourhood exponent for blocal: b = ⌈n^ε⌉.
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    /// Explicit b, overriding the one derived from ε.
    #[arg(long)]
    b: Option<usize>,
    #[arg(long, env = "PERMTOOL_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Compare the result with a brute-force reference.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["n", "input"]))]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    /// Generate a random permutation of this size.
    #[arg(long)]
    n: Option<usize>,
    /// Permutation file: n on the first line, π(1) … π(n) on the second.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Data to permute, one line of tokens (permute only).
    #[arg(long)]
    array: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Write the result (leaders, array or inverse) of the last trial here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    common: Common,
    /// Sizes, e.g. 1024..65536x2.
    #[arg(long)]
    sizes: SizeRange,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, value_enum, default_value = "leaders")]
    task: Task,
    #[arg(long, value_enum, default_value = "random")]
    shape: Shape,
}

fn read(path: &Path) -> Result<String, RunError> {
    fs::read_to_string(path).map_err(|source| RunError::Io { path: path.to_path_buf(), source })
}

fn config(task: Task, c: &Common) -> Config {
    Config { task, algo: c.algo, epsilon: c.epsilon, b: c.b, check: c.check }
}

fn run(task: Task, args: &RunArgs) -> Result<Vec<RunReport>, RunError> {
    let cfg = config(task, &args.common);
    if args.array.is_some() && task != Task::Permute {
        return Err(RunError::Usage("--array only applies to permute".into()));
    }
    let from_file = match &args.input {
        Some(path) => Some(parse_perm(&read(path)?).map_err(|source| RunError::Parse { path: path.clone(), source })?),
        None => None,
    };
    let data = args.array.as_deref().map(read).transpose()?.map(|s| parse_array(&s));
    let mut reports = Vec::new();
    let mut last = None;
    for trial in 0..args.trials.max(1) {
        let (perm, seed) = match (&from_file, args.n) {
            (Some(p), _) => (p.clone(), None),
            (None, Some(n)) => {
                let s = trial_seed(args.common.seed, n, trial);
                (generate(Shape::Random, n, s)?, Some(s))
            }
            (None, None) => unreachable!("clap requires a source"),
        };
        let mut out = run_once(&cfg, &perm, data.as_deref())?;
        out.report.seed = seed;
        out.report.trial = trial;
        reports.push(out.report);
        last = Some(out.output);
    }
    if let (Some(path), Some(text)) = (&args.output, last) {
        fs::write(path, text).map_err(|source| RunError::Io { path: path.clone(), source })?;
    }
    Ok(reports)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match &cli.cmd {
        Cmd::Leaders(a) => (run(Task::Leaders, a), a.common.format),
        Cmd::Permute(a) => (run(Task::Permute, a), a.common.format),
        Cmd::Invert(a) => (run(Task::Invert, a), a.common.format),
        Cmd::Bench(a) => {
            let cfg = config(a.task, &a.common);
            (bench(&cfg, &a.sizes, a.trials, a.common.seed, a.shape).map(|(r, _)| r), a.common.format)
        }
    };
    let reports = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("permtool: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let mut out = io::stdout().lock();
    if let Err(e) = write_reports(&reports, format, &mut out).and_then(|_| out.flush()) {
        eprintln!("permtool: {e}");
        return ExitCode::from(2);
    }
    if reports.iter().any(|r| r.oracle_check == Check::Fail) {
        eprintln!("permtool: oracle check failed");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
