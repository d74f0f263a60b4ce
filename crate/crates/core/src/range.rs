//! Walks along π: range minima, distances, predecessors.

use thiserror::Error;

use crate::table::{Successor, Value};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum RangeError {
    #[error("walked off the end of a path at {at}")]
    OffPath { at: usize },
    #[error("{from} lies on a cycle, there is no path end")]
    NoPathEnd { from: usize },
    #[error("a range needs a concrete first element")]
    NullStart,
    #[error("index {0} out of range")]
    OutOfRange(usize),
}

/// A range `a … b` along π; `None` stands for ⊥.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RangeSpec {
    pub a: Option<usize>,
    pub b: Option<usize>,
}

impl RangeSpec {
    pub fn min<S: Successor + ?Sized>(&self, s: &S) -> Result<usize, RangeError> {
        let a = self.a.ok_or(RangeError::NullStart)?;
        min_range(s, a, self.b)
    }
}

#[inline]
fn step<S: Successor + ?Sized>(s: &S, x: usize) -> Result<usize, RangeError> {
    match s.succ(x) {
        Value::Elem(y) => Ok(y),
        Value::Null(_) => Err(RangeError::OffPath { at: x }),
    }
}

fn check<S: Successor + ?Sized>(s: &S, x: usize) -> Result<(), RangeError> {
    if x == 0 || x > s.n() {
        Err(RangeError::OutOfRange(x))
    } else {
        Ok(())
    }
}

/// Minimum of `a, π(a), …, b`. `a == b` covers the whole cycle; `b = None`
/// scans to the end of the path.
pub fn min_range<S: Successor + ?Sized>(
    s: &S,
    a: usize,
    b: Option<usize>,
) -> Result<usize, RangeError> {
    check(s, a)?;
    let mut best = a;
    let mut x = a;
    match b {
        Some(b) => {
            check(s, b)?;
            loop {
                x = step(s, x)?;
                if x == b {
                    if a != b {
                        best = best.min(b);
                    }
                    return Ok(best);
                }
                best = best.min(x);
            }
        }
        None => loop {
            match s.succ(x) {
                Value::Null(_) => return Ok(best),
                Value::Elem(y) if y == a => return Err(RangeError::NoPathEnd { from: a }),
                Value::Elem(y) => {
                    best = best.min(y);
                    x = y;
                }
            }
        },
    }
}

/// `min(MinRange(x, y), MinRange(y, z))`.
pub fn min_range3<S: Successor + ?Sized>(
    s: &S,
    x: usize,
    y: usize,
    z: usize,
) -> Result<usize, RangeError> {
    Ok(min_range(s, x, Some(y))?.min(min_range(s, y, Some(z))?))
}

/// `len(i, j) = min{k > 0 : π^k(i) = j}`.
pub fn dist<S: Successor + ?Sized>(s: &S, i: usize, j: usize) -> Result<usize, RangeError> {
    check(s, i)?;
    check(s, j)?;
    let mut x = i;
    let mut k = 0;
    loop {
        x = step(s, x)?;
        k += 1;
        if x == j {
            return Ok(k);
        }
        if x == i {
            return Err(RangeError::OffPath { at: i });
        }
    }
}

/// The element `x` with `π(x) = y`, found by walking around y's cycle.
pub fn predecessor<S: Successor + ?Sized>(s: &S, y: usize) -> Result<usize, RangeError> {
    check(s, y)?;
    let mut x = y;
    loop {
        let nx = step(s, x)?;
        if nx == y {
            return Ok(x);
        }
        x = nx;
    }
}
