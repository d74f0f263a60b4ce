use std::path::PathBuf;
use std::time::Instant;

use clap::ValueEnum;
use inplace_perm::blocal::ParamError;
use inplace_perm::invert_blocal::run_invert_blocal;
use inplace_perm::invert_logspace::{invert_cycle, run_invert_logspace, InvertError};
use inplace_perm::permute::{permute, PermuteError};
use inplace_perm::range::RangeError;
use inplace_perm::testkit::{self, cycles, ref_inverse, ref_permute, GenError, Instance, LevelSets};
use inplace_perm::text::{format_array, format_perm, ParseError};
use inplace_perm::{run_leaders, BParams, LeaderAlgo, PermError, PermTable};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::fit::{fit_exponent, FitError};
use crate::report::{Check, RunReport};
use crate::sizes::SizeRange;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Task {
    Leaders,
    Permute,
    Invert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Naive,
    Logspace,
    Blocal,
}

/// Generated input families for `bench`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Random,
    /// The single cycle `i ↦ i + 1`.
    Rotation,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Invert(#[from] InvertError),
    #[error(transparent)]
    Permute(#[from] PermuteError),
    #[error(transparent)]
    Range(#[from] RangeError),
}

impl RunError {
    /// 2 for bad input, 1 when an algorithm itself failed.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Invert(_) | RunError::Permute(_) | RunError::Range(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Config {
    pub task: Task,
    pub algo: Algo,
    pub epsilon: f64,
    /// Overrides the ε-derived `b`.
    pub b: Option<usize>,
    pub check: bool,
}

impl Config {
    fn params(&self, n: usize) -> Result<Option<BParams>, ParamError> {
        if self.algo != Algo::Blocal {
            return Ok(None);
        }
        let bp = BParams::from_epsilon(n, self.epsilon)?;
        Ok(Some(match self.b {
            Some(b) => bp.override_b(n, b)?,
            None => bp,
        }))
    }
}

/// A report plus the textual result.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub output: String,
}

fn digest(kind: &str, body: &str) -> String {
    let mut h = Sha256::new();
    h.update(kind.as_bytes());
    h.update(b"\n");
    h.update(body.as_bytes());
    format!("{:x}", h.finalize())
}

fn expected_leaders(p: &[usize], cfg: &Config, bp: Option<BParams>) -> Vec<usize> {
    let mut out: Vec<usize> = cycles(p)
        .into_iter()
        .map(|c| match (cfg.algo, bp) {
            (Algo::Naive, _) => c[0],
            (Algo::Blocal, Some(bp)) => LevelSets::new(c, true, bp.b).ref_leader(),
            _ => LevelSets::new(c, true, 1).ref_leader(),
        })
        .collect();
    out.sort_unstable();
    out
}

/// Run one task on `perm`, measuring the oracle accesses of the algorithm.
///
/// `data` is the array to permute (`1..=n` when absent).
pub fn run_once(cfg: &Config, perm: &[usize], data: Option<&[String]>) -> Result<Outcome, RunError> {
    let n = perm.len();
    let bp = cfg.params(n)?;
    let algo = match (cfg.algo, bp) {
        (Algo::Naive, _) => LeaderAlgo::Naive,
        (Algo::Logspace, _) => LeaderAlgo::Logspace,
        (Algo::Blocal, Some(bp)) => LeaderAlgo::Blocal(bp),
        (Algo::Blocal, None) => unreachable!(),
    };
    let mut t = PermTable::from_perm(perm.to_vec())?;
    t.reset_stats();
    let start = Instant::now();
    let (output, ok) = match cfg.task {
        Task::Leaders => {
            let leaders = run_leaders(&t, algo);
            let ok = cfg.check.then(|| leaders == expected_leaders(perm, cfg, bp));
            (format_array(&leaders), ok)
        }
        Task::Permute => {
            let mut a: Vec<String> = match data {
                Some(d) if d.len() != n => {
                    return Err(RunError::Usage(format!("array has {} values, permutation has {n}", d.len())))
                }
                Some(d) => d.to_vec(),
                None => (1..=n).map(|x| x.to_string()).collect(),
            };
            let before = a.clone();
            permute(&mut a, &t, algo)?;
            let ok = cfg.check.then(|| a == ref_permute(&before, perm));
            (format_array(&a), ok)
        }
        Task::Invert => {
            match (cfg.algo, bp) {
                (Algo::Naive, _) => {
                    for l in run_leaders(&t, LeaderAlgo::Naive) {
                        invert_cycle(&mut t, l)?;
                    }
                }
                (Algo::Logspace, _) => {
                    run_invert_logspace(&mut t)?;
                }
                (Algo::Blocal, bp) => {
                    run_invert_blocal(&mut t, bp.expect("blocal has parameters"))?;
                }
            }
            let got = t.to_perm();
            let ok = cfg.check.then(|| got.as_deref() == Some(&ref_inverse(perm)[..]));
            let text = got.map_or_else(|| "residual nulls".to_string(), |p| format_perm(&p));
            (text, ok)
        }
    };
    let elapsed = start.elapsed().as_secs_f64();
    let stats = t.stats();
    let task = format!("{:?}", cfg.task).to_lowercase();
    let report = RunReport {
        digest: digest(&task, &output),
        task,
        algo: algo.name().to_string(),
        n,
        b: bp.map(|bp| bp.b),
        epsilon: bp.and_then(|bp| bp.epsilon),
        seed: None,
        trial: 0,
        reads: stats.reads,
        writes: stats.writes,
        physical_probes: stats.probes,
        peak_words: t.meter_handle().peak(),
        elapsed,
        oracle_check: match ok {
            None => Check::Skipped,
            Some(true) => Check::Pass,
            Some(false) => Check::Fail,
        },
        slope: None,
    };
    Ok(Outcome { report, output })
}

/// Per-trial seed, spread so neighbouring `(seed, n, trial)` differ widely.
pub fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    let mut z = seed ^ (n as u64).rotate_left(32) ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn generate(shape: Shape, n: usize, seed: u64) -> Result<Vec<usize>, RunError> {
    let s = match shape {
        Shape::Random => testkit::Shape::RandomPerm(n),
        Shape::Rotation => testkit::Shape::Rotation(n),
    };
    match testkit::gen(seed, s)? {
        Instance::Perm(p) => Ok(p),
        _ => unreachable!("permutation shapes"),
    }
}

/// Run `trials` instances per size and fit the read-count exponent.
pub fn bench(
    cfg: &Config,
    sizes: &SizeRange,
    trials: usize,
    seed: u64,
    shape: Shape,
) -> Result<(Vec<RunReport>, f64), RunError> {
    let mut distinct = sizes.0.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(RunError::Usage(format!("a fit needs at least 3 distinct sizes, got {}", distinct.len())));
    }
    let mut reports = Vec::new();
    for &n in &sizes.0 {
        for trial in 0..trials {
            let s = trial_seed(seed, n, trial);
            let mut r = run_once(cfg, &generate(shape, n, s)?, None)?.report;
            r.seed = Some(s);
            r.trial = trial;
            reports.push(r);
        }
    }
    let points: Vec<(f64, f64)> = reports.iter().map(|r| (r.n as f64, r.reads as f64)).collect();
    let slope = fit_exponent(&points)?;
    for r in &mut reports {
        r.slope = Some(slope);
    }
    Ok((reports, slope))
}
