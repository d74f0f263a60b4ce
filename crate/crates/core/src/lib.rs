//! Strictly in-place permutation algorithms: cycle leaders, array
//! permuting and inversion, behind an instrumented permutation oracle.
//!
//! Everything is 1-based: a permutation on `n` elements maps `1..=n` to
//! itself, and `π(i)` is read with [`Successor::succ`].

pub mod blocal;
pub mod invert_blocal;
pub mod invert_logspace;
pub mod logspace;
pub mod meter;
pub mod permute;
pub mod range;
pub mod table;
pub mod testkit;
pub mod text;

use thiserror::Error;

pub use blocal::BParams;
pub use meter::SpaceMeter;
pub use table::{AccessStats, PermError, PermTable, Phase, Successor, Value};

/// A walk tried to step past the end of a path.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("walked past the end of a path")]
pub struct Aborted;

/// Which definition of "leader" to elect.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LeaderAlgo {
    /// The minimum of each cycle; quadratic time.
    Naive,
    /// The unique start of a best staircase; `O(log n)` words.
    Logspace,
    /// The start of the best b-staircase whose middle is the cycle minimum.
    Blocal(BParams),
}

impl LeaderAlgo {
    pub fn name(&self) -> &'static str {
        match self {
            LeaderAlgo::Naive => "naive",
            LeaderAlgo::Logspace => "logspace",
            LeaderAlgo::Blocal(_) => "blocal",
        }
    }
}

/// Call `report` with every leader, in increasing order.
pub fn for_each_leader<S: Successor + ?Sized>(s: &S, algo: LeaderAlgo, mut report: impl FnMut(usize)) {
    match algo {
        LeaderAlgo::Naive => {
            for i in 1..=s.n() {
                if logspace::naive_process(s, i) {
                    report(i);
                }
            }
        }
        LeaderAlgo::Logspace => logspace::logspace_leaders(s, report),
        LeaderAlgo::Blocal(bp) => {
            for i in 1..=s.n() {
                if blocal::process_blocal(s, bp.b, i) {
                    report(i);
                }
            }
        }
    }
}

/// Collect the leaders of a permutation.
pub fn run_leaders<S: Successor + ?Sized>(s: &S, algo: LeaderAlgo) -> Vec<usize> {
    let mut out = Vec::new();
    for_each_leader(s, algo, |i| out.push(i));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leaders_of_small_permutations() {
        let t = PermTable::identity(5);
        let bp = BParams::with_b(5, 2).unwrap();
        for algo in [LeaderAlgo::Naive, LeaderAlgo::Logspace, LeaderAlgo::Blocal(bp)] {
            assert_eq!(run_leaders(&t, algo), vec![1, 2, 3, 4, 5]);
        }
        let t = PermTable::from_perm(vec![2, 3, 4, 1]).unwrap();
        assert_eq!(run_leaders(&t, LeaderAlgo::Naive), vec![1]);
        assert_eq!(run_leaders(&t, LeaderAlgo::Logspace), vec![4]);
        let bp = BParams::with_b(4, 2).unwrap();
        assert_eq!(run_leaders(&t, LeaderAlgo::Blocal(bp)), vec![3]);
    }
}
