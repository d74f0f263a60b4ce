//! Library side of `permtool`: measured runs, oracle checks, report output
//! and scaling fits.

pub mod fit;
pub mod report;
pub mod run;
pub mod sizes;

pub use fit::{fit_exponent, FitError};
pub use report::{write_reports, Check, Format, RunReport};
pub use run::{bench, run_once, Algo, Config, Outcome, RunError, Shape, Task};
pub use sizes::SizeRange;
