//! In-place inversion with `O_ε(1)` words.
//!
//! Cycles are reversed at their leader. Hard cycles become paths whose null
//! stores the rank of the new leader; outstanding elements of a path (or of
//! a sigma's tail) grow it into larger sigmas until its start closes the
//! cycle again.
//!
//! Finding the end of a sigma runs a tortoise-and-hare walker in lock-step
//! with the staircase construction, so the staircase sees the sigma's
//! closing edge as a null before it can ever read it.

use std::cell::{Cell, RefCell};

use crate::blocal::{best_b_staircase, rank_bound, BParams, Ptr};
use crate::invert_logspace::{invert_cycle, InvertError};
use crate::meter::{Charge, SpaceMeter};
use crate::range::{min_range, min_range3, predecessor, RangeError};
use crate::table::{PermTable, Phase, Successor, Value};

/// Result of a tortoise-and-hare run from some `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Intersection {
    /// The element with two predecessors.
    At(usize),
    /// `i` lies on the loop (or on a plain cycle).
    OnLoop,
    /// A null was hit; `end` is the element with `π(end) = ⊥`.
    PathEnd(usize),
}

/// What the walker learned about the component of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Cycle { pred: usize },
    Path { end: usize },
    Tail { intersection: usize, end: usize },
}

impl Boundary {
    /// The predecessor of `i` on a cycle, the end of a path or sigma.
    pub fn a(self) -> usize {
        match self {
            Boundary::Cycle { pred } => pred,
            Boundary::Path { end } => end,
            Boundary::Tail { end, .. } => end,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum State {
    Floyd { t: usize, h: usize },
    Lap { meet: usize, t0: usize, ell: usize },
    Lead { t1: usize, left: usize },
    Meet { t1: usize, t2: usize },
    Pred { x: usize, target: usize },
    Done,
}

/// Resumable tortoise-and-hare walker. One step is one loop iteration.
#[derive(Debug)]
pub struct Walker {
    i: usize,
    state: State,
    found: Option<Intersection>,
    boundary: Option<Boundary>,
    find_only: bool,
    /// Iterations spent finding the intersection.
    pub find_steps: u64,
    /// Iterations spent on the extra lap to the loop predecessor.
    pub pred_steps: u64,
    pub reads: u64,
    _words: Charge,
}

impl Walker {
    pub fn new(i: usize, meter: &SpaceMeter) -> Self {
        Self::with_mode(i, false, meter)
    }

    fn with_mode(i: usize, find_only: bool, meter: &SpaceMeter) -> Self {
        Walker {
            i,
            state: State::Floyd { t: i, h: i },
            found: None,
            boundary: None,
            find_only,
            find_steps: 0,
            pred_steps: 0,
            reads: 0,
            // i, two cursors, ℓ, the state tag and the step counter
            _words: meter.charge(6),
        }
    }

    pub fn found(&self) -> Option<Intersection> {
        self.found
    }

    pub fn boundary(&self) -> Option<Boundary> {
        self.boundary
    }

    pub fn is_done(&self) -> bool {
        matches!(self.state, State::Done)
    }

    fn read<S: Successor + ?Sized>(&mut self, s: &S, x: usize) -> Value {
        self.reads += 1;
        s.succ(x)
    }

    fn finish(&mut self, found: Intersection) {
        self.found = Some(found);
        self.state = match found {
            Intersection::PathEnd(end) => {
                self.boundary = Some(Boundary::Path { end });
                State::Done
            }
            _ if self.find_only => State::Done,
            Intersection::OnLoop => State::Pred { x: self.i, target: self.i },
            Intersection::At(c) => State::Pred { x: c, target: c },
        };
    }

    /// Run one iteration. Returns `false` once done.
    pub fn step<S: Successor + ?Sized>(&mut self, s: &S) -> bool {
        match self.state {
            State::Floyd { t, h } => {
                self.find_steps += 1;
                let h1 = match self.read(s, h) {
                    Value::Elem(h1) => h1,
                    Value::Null(_) => {
                        self.finish(Intersection::PathEnd(h));
                        return true;
                    }
                };
                let h2 = match self.read(s, h1) {
                    Value::Elem(h2) => h2,
                    Value::Null(_) => {
                        self.finish(Intersection::PathEnd(h1));
                        return true;
                    }
                };
                let t = self.read(s, t).elem().expect("tortoise trails the hare");
                self.state = if t == h2 {
                    State::Lap { meet: t, t0: t, ell: 0 }
                } else {
                    State::Floyd { t, h: h2 }
                };
            }
            State::Lap { meet, t0, ell } => {
                if t0 == self.i {
                    self.finish(Intersection::OnLoop);
                    return true;
                }
                self.find_steps += 1;
                let t0 = self.read(s, t0).elem().expect("loop is closed");
                self.state = if t0 == meet {
                    State::Lead { t1: self.i, left: ell + 1 }
                } else {
                    State::Lap { meet, t0, ell: ell + 1 }
                };
            }
            State::Lead { t1, left } => {
                self.find_steps += 1;
                let t1 = self.read(s, t1).elem().expect("on the sigma");
                self.state = if left == 1 {
                    State::Meet { t1, t2: self.i }
                } else {
                    State::Lead { t1, left: left - 1 }
                };
            }
            State::Meet { t1, t2 } => {
                if t1 == t2 {
                    self.finish(Intersection::At(t1));
                    return true;
                }
                self.find_steps += 1;
                let t1 = self.read(s, t1).elem().expect("on the sigma");
                let t2 = self.read(s, t2).elem().expect("on the sigma");
                self.state = State::Meet { t1, t2 };
            }
            State::Pred { x, target } => {
                self.pred_steps += 1;
                let nx = self.read(s, x).elem().expect("loop is closed");
                if nx == target {
                    self.boundary = Some(match self.found {
                        Some(Intersection::At(c)) => Boundary::Tail {
                            intersection: c,
                            end: x,
                        },
                        _ => Boundary::Cycle { pred: x },
                    });
                    self.state = State::Done;
                } else {
                    self.state = State::Pred { x: nx, target };
                }
            }
            State::Done => return false,
        }
        true
    }

    pub fn run<S: Successor + ?Sized>(&mut self, s: &S, steps: u64) {
        for _ in 0..steps {
            if !self.step(s) {
                break;
            }
        }
    }

    pub fn finish_run<S: Successor + ?Sized>(&mut self, s: &S) {
        while self.step(s) {}
    }
}

/// Outcome and cost of a standalone intersection search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    pub outcome: Intersection,
    pub steps: u64,
    pub reads: u64,
}

/// Find the intersection of the sigma through `i`.
pub fn find_intersection<S: Successor + ?Sized>(s: &S, i: usize) -> IntersectionReport {
    let mut w = Walker::with_mode(i, true, s.meter());
    w.finish_run(s);
    IntersectionReport {
        outcome: w.found.expect("walker finished"),
        steps: w.find_steps,
        reads: w.reads,
    }
}

/// Turn the cycle through `y` into a path starting at `y`.
pub fn cut_before(t: &mut PermTable, y: usize, null_type: usize) -> Result<(), RangeError> {
    let x = predecessor(&*t, y)?;
    t.write(x, Value::Null(null_type))
        .map_err(|_| RangeError::OutOfRange(null_type))
}

/// The table as seen by a staircase running alongside a walker: every read
/// first grants the walker `ratio` steps, and once the walker knows the end
/// of a sigma, that end reads as a null.
struct AugView<'a> {
    t: &'a PermTable,
    walker: RefCell<Walker>,
    ratio: u64,
    hidden: usize,
    reads: Cell<u64>,
}

impl Successor for AugView<'_> {
    fn n(&self) -> usize {
        self.t.n()
    }

    fn succ(&self, x: usize) -> Value {
        self.reads.set(self.reads.get() + 1);
        let mut w = self.walker.borrow_mut();
        if !w.is_done() {
            let prev = self.t.set_phase(Phase::Intersection);
            w.run(self.t, self.ratio);
            self.t.set_phase(prev);
        }
        let v = self.t.succ(x);
        match w.boundary {
            Some(Boundary::Tail { end, .. }) if end == x => Value::Null(self.hidden),
            _ => v,
        }
    }

    fn meter(&self) -> &crate::SpaceMeter {
        self.t.meter_handle()
    }
}

/// A best b-staircase together with the boundary element `a`.
#[derive(Debug)]
pub struct AugResult {
    pub ptr: Option<Ptr>,
    /// Known whenever `ptr` is.
    pub boundary: Option<Boundary>,
    pub staircase_reads: u64,
    /// Walker iterations granted while the staircase ran.
    pub interleaved_steps: u64,
    /// Walker iterations needed after the staircase succeeded.
    pub trailing_steps: u64,
    pub walker_reads: u64,
    pub find_steps: u64,
}

impl AugResult {
    pub fn a(&self) -> Option<usize> {
        self.boundary.map(Boundary::a)
    }
}

/// [`best_b_staircase`] from `i`, treating a sigma's closing edge as a null
/// of type `hidden`, and also reporting the predecessor of `i` (cycle) or
/// the end of its component (path, sigma tail).
pub fn best_b_staircase_aug(t: &PermTable, b: usize, i: usize, ratio: u64, hidden: usize) -> AugResult {
    let view = AugView {
        t,
        walker: RefCell::new(Walker::new(i, t.meter_handle())),
        ratio,
        hidden,
        reads: Cell::new(0),
    };
    let prev = t.set_phase(Phase::Staircase);
    let ptr = best_b_staircase(&view, b, i);
    t.set_phase(prev);
    let mut w = view.walker.into_inner();
    let interleaved = w.find_steps + w.pred_steps;
    let mut trailing = 0;
    if ptr.is_some() && !w.is_done() {
        let prev = t.set_phase(Phase::Intersection);
        w.finish_run(t);
        t.set_phase(prev);
        trailing = w.find_steps + w.pred_steps - interleaved;
    }
    AugResult {
        boundary: if ptr.is_some() { w.boundary } else { None },
        ptr,
        staircase_reads: view.reads.get(),
        interleaved_steps: interleaved,
        trailing_steps: trailing,
        walker_reads: w.reads,
        find_steps: w.find_steps,
    }
}

/// Null types of one run: ranks `0..=R` map to `⊥_{rank+1}`, `⊥_k` is the
/// placeholder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlocalNulls {
    pub k: usize,
    pub placeholder: usize,
}

impl BlocalNulls {
    pub fn for_params(n: usize, b: usize) -> Self {
        let k = rank_bound(n, b) + 2;
        BlocalNulls { k, placeholder: k }
    }
}

/// Default walker steps per staircase read.
pub const DEFAULT_RATIO: u64 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BlocalInvertStats {
    pub cycles_inverted: usize,
    pub cuts: usize,
    pub sigma_updates: usize,
    pub reverted: usize,
    pub aug_calls: usize,
    pub staircase_reads: u64,
    pub interleaved_steps: u64,
    pub trailing_steps: u64,
    pub walker_reads: u64,
    /// Largest `interleaved_steps / staircase_reads` over all calls.
    pub max_step_ratio: f64,
}

impl BlocalInvertStats {
    fn absorb(&mut self, aug: &AugResult) {
        self.aug_calls += 1;
        self.staircase_reads += aug.staircase_reads;
        self.interleaved_steps += aug.interleaved_steps;
        self.trailing_steps += aug.trailing_steps;
        self.walker_reads += aug.walker_reads;
        if aug.staircase_reads > 0 {
            let r = aug.interleaved_steps as f64 / aug.staircase_reads as f64;
            self.max_step_ratio = self.max_step_ratio.max(r);
        }
    }
}

/// Handle element `i` of the left-to-right scan.
pub fn process_invert_blocal(
    t: &mut PermTable,
    b: usize,
    i: usize,
    nulls: BlocalNulls,
    ratio: u64,
    stats: &mut BlocalInvertStats,
) {
    let aug = best_b_staircase_aug(t, b, i, ratio, nulls.placeholder);
    stats.absorb(&aug);
    let a = aug.a();
    let (Some(p), Some(a)) = (aug.ptr, a) else {
        return;
    };
    let prev = t.set_phase(Phase::Verify);
    let on_cycle = t.succ(a) == Value::Elem(i)
        && min_range3(&*t, i, p.e(), a).is_ok_and(|m| m == p.e());
    if on_cycle {
        let i2 = p.get_end();
        let a2 = t.succ(i2).elem().expect("on a cycle");
        drop(p);
        t.set_phase(Phase::Invert);
        invert_cycle(t, i).expect("on a cycle");
        stats.cycles_inverted += 1;
        if i2 > i {
            t.set(a2, Value::Null(nulls.placeholder));
            t.set_phase(Phase::Staircase);
            let cut = best_b_staircase(&*t, b, i2).expect("a cut leader keeps its rank");
            t.set(a2, Value::Null(cut.r()));
            stats.cuts += 1;
        }
    } else {
        let w = match t.succ(a) {
            Value::Elem(c) => {
                t.set_phase(Phase::Staircase);
                let loop_leader = best_b_staircase(&*t, b, c).expect("the intersection leads its loop");
                Value::Null(loop_leader.r())
            }
            null => null,
        };
        if w == Value::Null(p.r()) {
            drop(p);
            let s_a = t.succ(a);
            t.set_phase(Phase::Rotate);
            t.set(a, Value::Elem(i));
            t.set_phase(Phase::Staircase);
            let keep = best_b_staircase(&*t, b, i)
                .is_some_and(|q| min_range(&*t, i, Some(i)) == Ok(q.e()));
            if keep {
                stats.sigma_updates += 1;
            } else {
                t.set_phase(Phase::Rotate);
                t.set(a, s_a);
                stats.reverted += 1;
            }
        }
    }
    t.set_phase(prev);
}

/// Invert `t` in place.
pub fn run_invert_blocal(t: &mut PermTable, bp: BParams) -> Result<BlocalInvertStats, InvertError> {
    run_invert_blocal_observed(t, bp, DEFAULT_RATIO, |_, _| {})
}

/// Invert `t`, calling `observe(t, i)` after each processed element.
pub fn run_invert_blocal_observed(
    t: &mut PermTable,
    bp: BParams,
    ratio: u64,
    mut observe: impl FnMut(&PermTable, usize),
) -> Result<BlocalInvertStats, InvertError> {
    if t.has_nulls() {
        return Err(InvertError::NotAPermutation);
    }
    let n = t.len();
    let nulls = BlocalNulls::for_params(n, bp.b);
    t.configure_nulls(nulls.k, 2)?;
    let _registry = t.meter_handle().charge(2 * nulls.k);
    let mut stats = BlocalInvertStats::default();
    for i in 1..=n {
        process_invert_blocal(t, bp.b, i, nulls, ratio, &mut stats);
        observe(t, i);
    }
    let left = t.snapshot().iter().filter(|v| v.is_null()).count();
    if left > 0 {
        return Err(InvertError::ResidualNulls(left));
    }
    t.configure_nulls(0, 2)?;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_5() -> PermTable {
        // 5 → 1 → 2 → 3 → 4 → 2
        let v = [2, 3, 4, 2, 1].map(Value::Elem);
        PermTable::from_values(&v, 0, 1).unwrap()
    }

    fn path_4123() -> PermTable {
        PermTable::from_values(
            &[Value::Elem(2), Value::Elem(3), Value::Null(1), Value::Elem(1)],
            1,
            1,
        )
        .unwrap()
    }

    #[test]
    fn intersections() {
        let t = sigma_5();
        assert_eq!(find_intersection(&t, 5).outcome, Intersection::At(2));
        assert_eq!(find_intersection(&t, 1).outcome, Intersection::At(2));
        assert_eq!(find_intersection(&t, 3).outcome, Intersection::OnLoop);
        assert_eq!(find_intersection(&t, 2).outcome, Intersection::OnLoop);
        let t = PermTable::from_perm(vec![2, 3, 1]).unwrap();
        assert_eq!(find_intersection(&t, 2).outcome, Intersection::OnLoop);
        let t = path_4123();
        assert_eq!(find_intersection(&t, 4).outcome, Intersection::PathEnd(3));
        assert_eq!(find_intersection(&t, 3).outcome, Intersection::PathEnd(3));
    }

    #[test]
    fn walker_boundaries() {
        let t = sigma_5();
        let mut w = Walker::new(5, t.meter_handle());
        w.finish_run(&t);
        assert_eq!(w.boundary(), Some(Boundary::Tail { intersection: 2, end: 4 }));
        let mut w = Walker::new(3, t.meter_handle());
        w.finish_run(&t);
        assert_eq!(w.boundary(), Some(Boundary::Cycle { pred: 2 }));
    }

    #[test]
    fn cut_and_fix() {
        let mut t = PermTable::from_perm(vec![2, 3, 1]).unwrap();
        t.configure_nulls(1, 1).unwrap();
        cut_before(&mut t, 1, 1).unwrap();
        assert_eq!(t.snapshot(), vec![Value::Elem(2), Value::Elem(3), Value::Null(1)]);
        t.write(3, Value::Elem(1)).unwrap();
        assert_eq!(t.to_perm(), Some(vec![2, 3, 1]));
        let mut t = path_4123();
        assert!(cut_before(&mut t, 4, 1).is_err());
    }

    #[test]
    fn aug_examples() {
        let t = PermTable::from_perm(vec![2, 3, 4, 1]).unwrap();
        let aug = best_b_staircase_aug(&t, 1, 4, DEFAULT_RATIO, 1);
        assert_eq!(aug.ptr.as_ref().map(|p| p.e()), Some(1));
        assert_eq!(aug.a(), Some(3));
        let t = path_4123();
        let aug = best_b_staircase_aug(&t, 1, 4, DEFAULT_RATIO, 1);
        assert_eq!(aug.ptr.as_ref().map(|p| p.e()), Some(1));
        assert_eq!(aug.a(), Some(3));
    }

    #[test]
    fn easy_and_hard_cycles() {
        let bp = BParams::with_b(4, 1).unwrap();
        let mut t = PermTable::from_perm(vec![2, 3, 4, 1]).unwrap();
        let stats = run_invert_blocal(&mut t, bp).unwrap();
        assert_eq!(t.to_perm(), Some(vec![4, 1, 2, 3]));
        assert_eq!((stats.cycles_inverted, stats.cuts), (1, 0));

        let mut t = PermTable::from_perm(vec![4, 1, 2, 3]).unwrap();
        let mut seen = Vec::new();
        run_invert_blocal_observed(&mut t, bp, DEFAULT_RATIO, |t, i| seen.push((i, t.snapshot())))
            .unwrap();
        let cut = vec![Value::Elem(2), Value::Elem(3), Value::Null(2), Value::Elem(1)];
        assert_eq!(seen[1].1, cut);
        assert_eq!(seen[2].1, cut);
        assert_eq!(t.to_perm(), Some(vec![2, 3, 4, 1]));
    }
}
