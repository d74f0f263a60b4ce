//! Leaders via local minima on nested levels, with the elbow table.
//!
//! `E_1 = [n]`, `E_{r+1}` keeps the elements of `E_r` smaller than both
//! neighbours along `π_r`. A staircase from `i` climbs `i → π_1(i) → …` to a
//! middle `m` and descends on the other side; the right part lives in the
//! elbow table.

use crate::meter::{Charge, SpaceMeter};
use crate::range::min_range;
use crate::table::{Successor, Value};
use crate::Aborted;

/// `⌈log₂ n⌉` for `n ≥ 1`.
pub fn ceil_log2(n: usize) -> usize {
    (usize::BITS - n.saturating_sub(1).leading_zeros()) as usize
}

/// The working array `elbow[0..]` holding the right part of a staircase.
#[derive(Debug)]
pub struct ElbowTable {
    entries: Vec<usize>,
    _words: Charge,
}

impl ElbowTable {
    /// Table for a permutation on `n` elements: `⌈log₂ n⌉ + 2` entries.
    pub fn new(n: usize, meter: &SpaceMeter) -> Self {
        let len = ceil_log2(n.max(1)) + 2;
        ElbowTable {
            entries: vec![0; len],
            _words: meter.charge(len),
        }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn capacity(&self) -> usize {
        self.entries.len()
    }

    /// Overwrite the table, e.g. to set up a precondition in tests.
    pub fn load(&mut self, values: &[usize]) {
        self.entries[..values.len()].copy_from_slice(values);
    }

    /// Compute `π_r(elbow[r])` into `elbow[r-1]`, rebuilding the chain below.
    ///
    /// Expects `elbow[r] = elbow[r-1] ∈ E_r` and `elbow[k-1] = π_k(elbow[k])`
    /// for `k < r`.
    pub fn next<S: Successor + ?Sized>(&mut self, s: &S, r: usize) -> Result<(), Aborted> {
        let _frame = s.meter().charge(1);
        let el = &mut self.entries;
        if r == 1 {
            return match s.succ(el[1]) {
                Value::Elem(x) => {
                    el[0] = x;
                    Ok(())
                }
                Value::Null(_) => Err(Aborted),
            };
        }
        while self.entries[r - 1] < self.entries[r - 2] {
            self.entries[r - 1] = self.entries[r - 2];
            self.next(s, r - 1)?;
        }
        while self.entries[r - 1] > self.entries[r - 2] {
            self.entries[r - 1] = self.entries[r - 2];
            self.next(s, r - 1)?;
        }
        Ok(())
    }
}

/// `(t, h)`: best-staircase size and whether a half staircase of size
/// `t + 1` was completed. Ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtendedRank {
    pub t: usize,
    pub h: bool,
}

impl ExtendedRank {
    /// Null type for this rank: `2t + h + 1` (types start at 1).
    pub fn null_type(self) -> usize {
        2 * self.t + self.h as usize + 1
    }
}

/// Outcome of a successful best-staircase construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StaircaseReport {
    pub m: usize,
    pub end: usize,
    pub rank: ExtendedRank,
}

/// Build the best staircase from `i`, reporting middle, end and extended
/// rank, or `None` when a proper almost staircase fails to be a staircase.
pub fn best_staircase_ext<S: Successor + ?Sized>(s: &S, i: usize) -> Option<StaircaseReport> {
    let mut el = ElbowTable::new(s.n(), s.meter());
    best_staircase_in(s, &mut el, i)
}

pub(crate) fn best_staircase_in<S: Successor + ?Sized>(
    s: &S,
    el: &mut ElbowTable,
    i: usize,
) -> Option<StaircaseReport> {
    // r, m, m', m'', pi'
    let _locals = s.meter().charge(5);
    el.entries[0] = i;
    el.entries[1] = i;
    let done = |m, end, r: usize, h| {
        Some(StaircaseReport {
            m,
            end,
            rank: ExtendedRank { t: r - 1, h },
        })
    };
    for r in 1.. {
        let pi_end = el.entries[0];
        let m = el.entries[r];
        if el.next(s, r).is_err() {
            return done(m, pi_end, r, false);
        }
        el.entries[r] = el.entries[r - 1];
        let m1 = el.entries[r];
        if el.next(s, r).is_err() {
            return done(m, pi_end, r, true);
        }
        let m2 = el.entries[r - 1];
        if m1 == m {
            return done(m, pi_end, r, true);
        }
        if m1 < m && m1 < m2 {
            el.entries[r + 1] = el.entries[r];
        } else {
            return None;
        }
    }
    unreachable!()
}

/// Middle of the best staircase from `i`, if there is one.
pub fn best_staircase<S: Successor + ?Sized>(s: &S, i: usize) -> Option<usize> {
    best_staircase_ext(s, i).map(|rep| rep.m)
}

/// `i` is the leader iff it is the minimum of its cycle.
pub fn naive_process<S: Successor + ?Sized>(s: &S, i: usize) -> bool {
    min_range(s, i, Some(i)).is_ok_and(|m| m == i)
}

/// `i` is the leader iff there is a best staircase from it.
pub fn logspace_process<S: Successor + ?Sized>(s: &S, i: usize) -> bool {
    best_staircase(s, i).is_some()
}

pub(crate) fn logspace_leaders<S: Successor + ?Sized>(s: &S, mut report: impl FnMut(usize)) {
    let mut el = ElbowTable::new(s.n(), s.meter());
    for i in 1..=s.n() {
        if best_staircase_in(s, &mut el, i).is_some() {
            report(i);
        }
    }
}
