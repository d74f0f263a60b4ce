use std::io::{self, Write};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail,
    Skipped,
}

/// One measured run. `reads`/`writes` are the table's logical counters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub task: String,
    pub algo: String,
    pub n: usize,
    pub b: Option<usize>,
    pub epsilon: Option<f64>,
    pub seed: Option<u64>,
    pub trial: usize,
    pub reads: u64,
    pub writes: u64,
    pub physical_probes: u64,
    pub peak_words: usize,
    /// Seconds.
    pub elapsed: f64,
    /// SHA-256 of the result (leader set, permuted array or inverse).
    pub digest: String,
    pub oracle_check: Check,
    /// Fitted log-log slope of reads against n, on bench rows.
    pub slope: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), T::to_string)
}

pub fn write_reports(reports: &[RunReport], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in reports {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in reports {
                w.serialize(r).map_err(io::Error::other)?;
            }
            w.flush()?;
        }
        Format::Table => {
            writeln!(
                out,
                "{:<8} {:<9} {:>8} {:>5} {:>6} {:>12} {:>9} {:>6} {:>10} {:<8} {:>6}",
                "task", "algo", "n", "b", "eps", "reads", "writes", "peak", "secs", "check", "slope"
            )?;
            for r in reports {
                writeln!(
                    out,
                    "{:<8} {:<9} {:>8} {:>5} {:>6} {:>12} {:>9} {:>6} {:>10.4} {:<8} {:>6}",
                    r.task,
                    r.algo,
                    r.n,
                    opt(&r.b),
                    opt(&r.epsilon.map(|e| format!("{e:.3}"))),
                    r.reads,
                    r.writes,
                    r.peak_words,
                    r.elapsed,
                    format!("{:?}", r.oracle_check).to_lowercase(),
                    opt(&r.slope.map(|s| format!("{s:.3}"))),
                )?;
            }
        }
    }
    Ok(())
}
