//! In-place inversion with `O(log n)` words: cycles are reversed at their
//! leader; a hard cycle is cut into a path whose null records the extended
//! rank of the new leader, and fixed when that leader is reached.

use thiserror::Error;

use crate::blocal::rank_bound;
use crate::logspace::{best_staircase_ext, ExtendedRank};
use crate::range::{min_range, predecessor, RangeError};
use crate::table::{PermError, PermTable, Phase, Successor, Value};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvertError {
    #[error(transparent)]
    Table(#[from] PermError),
    #[error("input must be a permutation without nulls")]
    NotAPermutation,
    #[error("{0} null value(s) left after the run")]
    ResidualNulls(usize),
}

/// Reverse the cycle through `i` in place.
///
/// On a path nothing changes and an error is returned.
pub fn invert_cycle(t: &mut PermTable, i: usize) -> Result<(), RangeError> {
    let _locals = t.meter_handle().charge(3);
    let mut p = i;
    let mut x = match t.read(i).map_err(|_| RangeError::OutOfRange(i))? {
        Value::Elem(x) => x,
        Value::Null(_) => return Err(RangeError::OffPath { at: i }),
    };
    while x != i {
        let nx = match t.succ(x) {
            Value::Elem(nx) => nx,
            Value::Null(_) => {
                undo(t, i, p, x);
                return Err(RangeError::OffPath { at: x });
            }
        };
        t.set(x, Value::Elem(p));
        p = x;
        x = nx;
    }
    t.set(x, Value::Elem(p));
    Ok(())
}

/// Re-reverse the prefix `i … p` written by an aborted [`invert_cycle`].
fn undo(t: &mut PermTable, i: usize, mut cur: usize, mut next: usize) {
    while cur != i {
        let prev = t.succ(cur).elem().expect("reversed prefix is plain");
        t.set(cur, Value::Elem(next));
        next = cur;
        cur = prev;
    }
}

/// Reverse the cycle through `i` without ever storing a value twice.
///
/// The cycle is first cut before `i` with a `⊥_guard`, then reversed as a
/// path and closed again. Costs one extra lap of reads.
pub fn invert_cycle_guarded(t: &mut PermTable, i: usize, guard: usize) -> Result<(), RangeError> {
    let _locals = t.meter_handle().charge(4);
    let a = predecessor(&*t, i)?;
    if a == i {
        return Ok(());
    }
    t.set(a, Value::Null(guard));
    let mut prev = Value::Null(guard);
    let mut x = i;
    loop {
        let nx = t.succ(x);
        t.set(x, prev);
        if x == a {
            break;
        }
        prev = Value::Elem(x);
        x = nx.elem().expect("cut cycle is a path");
    }
    t.set(i, Value::Elem(a));
    Ok(())
}

/// The element `a` with `π(a) = ⊥` reached from `i`, or `None` when `i`
/// lies on a cycle.
pub fn path_end<S: Successor + ?Sized>(s: &S, i: usize) -> Option<usize> {
    let mut x = i;
    loop {
        match s.succ(x) {
            Value::Null(_) => return Some(x),
            Value::Elem(y) if y == i => return None,
            Value::Elem(y) => x = y,
        }
    }
}

/// Null types used by one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogspaceNulls {
    pub k: usize,
    /// `⊥_k`, written before the rank it stands for is known.
    pub placeholder: usize,
}

impl LogspaceNulls {
    pub fn for_n(n: usize) -> Self {
        // ranks (t, h) with t ≤ R encode to 1 ..= 2R + 2
        let k = 2 * rank_bound(n, 1) + 3;
        LogspaceNulls { k, placeholder: k }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct InvertStats {
    pub cycles_inverted: usize,
    pub cuts: usize,
    pub fixes: usize,
}

/// Handle element `i` of the left-to-right scan.
pub fn process_invert(t: &mut PermTable, i: usize, nulls: LogspaceNulls, stats: &mut InvertStats) {
    let prev = t.set_phase(Phase::Staircase);
    let report = best_staircase_ext(&*t, i);
    t.set_phase(Phase::Verify);
    let Some(rep) = report else {
        t.set_phase(prev);
        return;
    };
    let a = path_end(&*t, i);
    if a.is_none() && min_range(&*t, i, Some(i)) == Ok(rep.m) {
        let b = t.succ(rep.end).elem().expect("on a cycle");
        t.set_phase(Phase::Invert);
        invert_cycle_guarded(t, i, nulls.placeholder).expect("on a cycle");
        stats.cycles_inverted += 1;
        if rep.end > i {
            t.set(b, Value::Null(nulls.placeholder));
            t.set_phase(Phase::Staircase);
            let cut = best_staircase_ext(&*t, rep.end).expect("a cut leader keeps its rank");
            t.set(b, Value::Null(cut.rank.null_type()));
            stats.cuts += 1;
        }
    }
    if let Some(a) = a {
        if t.succ(a) == Value::Null(rep.rank.null_type()) {
            t.set_phase(Phase::Rotate);
            t.set(a, Value::Elem(i));
            stats.fixes += 1;
        }
    }
    t.set_phase(prev);
}

/// Decode a stored null type back into an extended rank.
pub fn rank_of_null(x: usize) -> ExtendedRank {
    ExtendedRank {
        t: (x - 1) / 2,
        h: (x - 1) % 2 == 1,
    }
}

/// Invert `t` in place.
pub fn run_invert_logspace(t: &mut PermTable) -> Result<InvertStats, InvertError> {
    run_invert_logspace_observed(t, |_, _| {})
}

/// Invert `t`, calling `observe(t, i)` after each processed element.
pub fn run_invert_logspace_observed(
    t: &mut PermTable,
    mut observe: impl FnMut(&PermTable, usize),
) -> Result<InvertStats, InvertError> {
    if t.has_nulls() {
        return Err(InvertError::NotAPermutation);
    }
    let n = t.len();
    let nulls = LogspaceNulls::for_n(n);
    t.configure_nulls(nulls.k, 1)?;
    let _registry = t.meter_handle().charge(nulls.k);
    let mut stats = InvertStats::default();
    for i in 1..=n {
        process_invert(t, i, nulls, &mut stats);
        observe(t, i);
    }
    let left = t.snapshot().iter().filter(|v| v.is_null()).count();
    if left > 0 {
        return Err(InvertError::ResidualNulls(left));
    }
    t.configure_nulls(0, 1)?;
    Ok(stats)
}
