//! Permutation storage with simulated typed nulls and access counting.
//!
//! Every slot physically holds one integer in `[n]`. Values `x <= k` are
//! ambiguous between the plain element `x` and the null `⊥_x`; a small
//! registry lists, for each such `x`, the (at most `c`) indices whose
//! logical value is the plain `x`. Anything else reading `x` is `⊥_x`.
//!
//! Indices and values are 1-based at the API boundary.

use std::cell::Cell;
use std::fmt;

use thiserror::Error;

use crate::meter::SpaceMeter;

/// Logical content of a slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Elem(usize),
    /// `⊥_x`, with `x >= 1`.
    Null(usize),
}

impl Value {
    #[inline]
    pub fn elem(self) -> Option<usize> {
        match self {
            Value::Elem(x) => Some(x),
            Value::Null(_) => None,
        }
    }

    #[inline]
    pub fn is_null(self) -> bool {
        matches!(self, Value::Null(_))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Elem(x) => write!(f, "{x}"),
            Value::Null(x) => write!(f, "⊥{x}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("value {value} would occur more than {c} times")]
    Multiplicity { value: usize, c: usize },
    #[error("null type {null} outside 1..={k}")]
    NullTypeOutOfRange { null: usize, k: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("a table needs at least one element")]
    Empty,
    #[error("table still holds null values")]
    NullsPresent,
}

/// Coarse attribution of accesses to algorithm phases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Staircase,
    Verify,
    Rotate,
    Invert,
    Intersection,
    Other,
}

impl Phase {
    pub const ALL: [Phase; 6] = [
        Phase::Staircase,
        Phase::Verify,
        Phase::Rotate,
        Phase::Invert,
        Phase::Intersection,
        Phase::Other,
    ];

    fn slot(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Phase::Staircase => "staircase",
            Phase::Verify => "verify",
            Phase::Rotate => "rotate",
            Phase::Invert => "invert",
            Phase::Intersection => "intersection",
            Phase::Other => "other",
        }
    }
}

/// Snapshot of the logical access counters of a table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AccessStats {
    pub reads: u64,
    pub writes: u64,
    /// Physical slot and registry probes; separate from logical accesses.
    pub probes: u64,
    /// Per-phase `(reads, writes)`, indexed like [`Phase::ALL`].
    pub by_phase: [(u64, u64); 6],
}

impl AccessStats {
    pub fn phase(&self, p: Phase) -> (u64, u64) {
        self.by_phase[p.slot()]
    }
}

/// The `(k, c)` null-extension registry.
#[derive(Clone, Debug, Default)]
pub struct NullRegistry {
    k: usize,
    c: usize,
    /// `buckets[x - 1]` lists indices whose logical value is the plain `x`.
    buckets: Vec<Vec<usize>>,
    /// Nulls whose type exceeds `n` and so cannot be written into a slot.
    /// Only reachable when `k > n`, i.e. for a handful of tiny tables.
    wide: Vec<(usize, usize)>,
}

impl NullRegistry {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn c(&self) -> usize {
        self.c
    }

    /// Auxiliary words the registry may occupy.
    pub fn words(&self) -> usize {
        self.c * self.buckets.len() + 2 * self.wide.len()
    }

    fn span(&self) -> usize {
        self.buckets.len()
    }
}

/// A permutation of `[n]`, or a partial function on it during in-place
/// inversion, behind an instrumented oracle.
#[derive(Clone)]
pub struct PermTable {
    base: Vec<usize>,
    registry: NullRegistry,
    reads: Cell<u64>,
    writes: Cell<u64>,
    probes: Cell<u64>,
    phase: Cell<Phase>,
    phase_mark: Cell<(u64, u64)>,
    phase_totals: [Cell<(u64, u64)>; 6],
    meter: SpaceMeter,
}

impl fmt::Debug for PermTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermTable")
            .field("values", &self.snapshot())
            .field("k", &self.registry.k)
            .field("c", &self.registry.c)
            .finish()
    }
}

/// Read access to a successor function, possibly with some links hidden.
///
/// All algorithms read the permutation only through this trait so that a
/// view can present a sigma's closing edge as a null.
pub trait Successor {
    fn n(&self) -> usize;
    /// Counted logical read of `π(i)`. `i` must be in `1..=n`.
    fn succ(&self, i: usize) -> Value;
    fn meter(&self) -> &SpaceMeter;
}

impl PermTable {
    /// Build from 1-based values `π(1), …, π(n)`.
    pub fn from_perm(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n];
        for (i, &v) in values.iter().enumerate() {
            if v == 0 || v > n {
                return Err(PermError::NotAPermutation(format!(
                    "position {} holds {v}, outside 1..={n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(PermError::NotAPermutation(format!("value {v} repeats")));
            }
        }
        Ok(Self::raw(values))
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "empty table");
        Self::raw((1..=n).collect())
    }

    /// Build an arbitrary partial function with `k` null types and
    /// multiplicity bound `c`.
    pub fn from_values(values: &[Value], k: usize, c: usize) -> Result<Self, PermError> {
        let n = values.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        // every slot is overwritten below; unregistered 1s read as ⊥_1 (or
        // as a plain 1 when k = 0) and never count towards a multiplicity
        let mut t = Self::raw(vec![1; n]);
        t.registry = NullRegistry {
            k,
            c,
            buckets: vec![Vec::with_capacity(c); k.min(n)],
            wide: Vec::new(),
        };
        for (i, &v) in values.iter().enumerate() {
            t.write(i + 1, v)?;
        }
        t.reset_stats();
        Ok(t)
    }

    fn raw(base: Vec<usize>) -> Self {
        PermTable {
            base,
            registry: NullRegistry::default(),
            reads: Cell::new(0),
            writes: Cell::new(0),
            probes: Cell::new(0),
            phase: Cell::new(Phase::Other),
            phase_mark: Cell::new((0, 0)),
            phase_totals: Default::default(),
            meter: SpaceMeter::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn registry(&self) -> &NullRegistry {
        &self.registry
    }

    pub fn meter_handle(&self) -> &SpaceMeter {
        &self.meter
    }

    /// Switch to `k` null types with multiplicity bound `c`.
    ///
    /// Fails if nulls are present or some plain value `<= k` already occurs
    /// more than `c` times. `k = 0` removes the registry.
    pub fn configure_nulls(&mut self, k: usize, c: usize) -> Result<(), PermError> {
        if self.has_nulls() {
            return Err(PermError::NullsPresent);
        }
        let n = self.len();
        let span = k.min(n);
        let mut buckets = vec![Vec::with_capacity(c); span];
        for (i, &v) in self.base.iter().enumerate() {
            if v <= span {
                let b: &mut Vec<usize> = &mut buckets[v - 1];
                if b.len() == c {
                    return Err(PermError::Multiplicity { value: v, c });
                }
                b.push(i + 1);
            }
        }
        self.registry = NullRegistry {
            k,
            c,
            buckets,
            wide: Vec::new(),
        };
        Ok(())
    }

    pub fn has_nulls(&self) -> bool {
        (1..=self.len()).any(|i| self.peek(i).is_null())
    }

    fn check_index(&self, i: usize) -> Result<(), PermError> {
        if i == 0 || i > self.len() {
            Err(PermError::IndexOutOfRange {
                index: i,
                n: self.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Decode slot `i` without touching the logical counters.
    /// Returns the value and the number of physical probes spent.
    #[inline]
    fn decode(&self, i: usize) -> (Value, u64) {
        let v = self.base[i - 1];
        if v > self.registry.span() {
            return (Value::Elem(v), 1);
        }
        let bucket = &self.registry.buckets[v - 1];
        if bucket.contains(&i) {
            return (Value::Elem(v), 1 + bucket.len() as u64);
        }
        let mut probes = 1 + bucket.len() as u64;
        if !self.registry.wide.is_empty() {
            probes += self.registry.wide.len() as u64;
            if let Some(&(_, x)) = self.registry.wide.iter().find(|&&(j, _)| j == i) {
                return (Value::Null(x), probes);
            }
        }
        (Value::Null(v), probes)
    }

    /// Uncounted read for oracles, audits and reporting.
    pub fn peek(&self, i: usize) -> Value {
        self.decode(i).0
    }

    /// Uncounted copy of every logical value.
    pub fn snapshot(&self) -> Vec<Value> {
        (1..=self.len()).map(|i| self.peek(i)).collect()
    }

    /// The table as a plain permutation, if it holds no nulls.
    pub fn to_perm(&self) -> Option<Vec<usize>> {
        (1..=self.len()).map(|i| self.peek(i).elem()).collect()
    }

    /// Counted logical read of `π(i)`.
    pub fn read(&self, i: usize) -> Result<Value, PermError> {
        self.check_index(i)?;
        Ok(self.succ(i))
    }

    /// Counted logical write `π(i) ← v`.
    pub fn write(&mut self, i: usize, v: Value) -> Result<(), PermError> {
        self.check_index(i)?;
        let n = self.len();
        let span = self.registry.span();
        match v {
            Value::Elem(x) => {
                if x == 0 || x > n {
                    return Err(PermError::IndexOutOfRange { index: x, n });
                }
                if x <= span {
                    let bucket = &self.registry.buckets[x - 1];
                    if bucket.len() >= self.registry.c && !bucket.contains(&i) {
                        return Err(PermError::Multiplicity {
                            value: x,
                            c: self.registry.c,
                        });
                    }
                }
            }
            Value::Null(x) => {
                if x == 0 || x > self.registry.k {
                    return Err(PermError::NullTypeOutOfRange {
                        null: x,
                        k: self.registry.k,
                    });
                }
            }
        }

        let mut probes = 1;
        let old = self.base[i - 1];
        if old <= span {
            let bucket = &mut self.registry.buckets[old - 1];
            probes += bucket.len() as u64;
            bucket.retain(|&j| j != i);
        }
        if !self.registry.wide.is_empty() {
            probes += self.registry.wide.len() as u64;
            self.registry.wide.retain(|&(j, _)| j != i);
        }
        match v {
            Value::Elem(x) => {
                self.base[i - 1] = x;
                if x <= span {
                    self.registry.buckets[x - 1].push(i);
                    probes += 1;
                }
            }
            Value::Null(x) if x <= n => {
                self.base[i - 1] = x;
            }
            Value::Null(x) => {
                // Types above n only exist when k > n; then every slot value
                // is registered, so any unregistered slot value reads as null.
                debug_assert_eq!(span, n);
                self.base[i - 1] = 1;
                self.registry.wide.push((i, x));
                probes += 1;
            }
        }
        self.writes.set(self.writes.get() + 1);
        self.probes.set(self.probes.get() + probes);
        Ok(())
    }

    /// Write a plain element at an index known to be valid.
    pub(crate) fn set(&mut self, i: usize, v: Value) {
        if let Err(e) = self.write(i, v) {
            panic!("internal write π({i}) ← {v} failed: {e}");
        }
    }

    pub fn stats(&self) -> AccessStats {
        self.flush_phase();
        let mut by_phase = [(0, 0); 6];
        for (slot, total) in by_phase.iter_mut().zip(&self.phase_totals) {
            *slot = total.get();
        }
        AccessStats {
            reads: self.reads.get(),
            writes: self.writes.get(),
            probes: self.probes.get(),
            by_phase,
        }
    }

    /// Zero the counters and the meter's peak. Only valid between runs.
    pub fn reset_stats(&self) {
        self.reads.set(0);
        self.writes.set(0);
        self.probes.set(0);
        self.phase_mark.set((0, 0));
        for t in &self.phase_totals {
            t.set((0, 0));
        }
        self.meter.reset_peak();
    }

    fn flush_phase(&self) {
        let now = (self.reads.get(), self.writes.get());
        let (r0, w0) = self.phase_mark.replace(now);
        let cell = &self.phase_totals[self.phase.get().slot()];
        let (r, w) = cell.get();
        cell.set((r + now.0 - r0, w + now.1 - w0));
    }

    /// Attribute subsequent accesses to `p`; returns the previous phase.
    pub fn set_phase(&self, p: Phase) -> Phase {
        self.flush_phase();
        self.phase.replace(p)
    }
}

impl Successor for PermTable {
    #[inline]
    fn n(&self) -> usize {
        self.base.len()
    }

    #[inline]
    fn succ(&self, i: usize) -> Value {
        let (v, probes) = self.decode(i);
        self.reads.set(self.reads.get() + 1);
        self.probes.set(self.probes.get() + probes);
        v
    }

    fn meter(&self) -> &SpaceMeter {
        &self.meter
    }
}
