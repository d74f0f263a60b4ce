//! Leaders via b-local minima and recursive pointers.
//!
//! Level `r + 1` keeps the elements of `E_r` smaller than their `b`
//! predecessors and `b` successors along `π_r`. A [`Ptr`] of level `r` walks
//! `π_r` using three level-`(r − 1)` pointers, so a structure of depth `t`
//! holds `O(3^t)` words regardless of `n`.

use thiserror::Error;

use crate::meter::{Charge, SpaceMeter};
use crate::range::{min_range, min_range3};
use crate::table::{Successor, Value};
use crate::Aborted;

/// Words charged per pointer node: level, element and two links.
pub const PTR_WORDS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("epsilon must lie in (0, 1], got {0}")]
    Epsilon(f64),
    #[error("b must be at least 1")]
    ZeroB,
}

/// Neighbourhood parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BParams {
    pub epsilon: Option<f64>,
    pub b: usize,
    /// `⌈1/ε⌉`, or the level bound implied by `b` when no ε is given.
    pub t_max: usize,
}

impl BParams {
    /// `b = ⌈n^ε⌉`.
    pub fn from_epsilon(n: usize, epsilon: f64) -> Result<Self, ParamError> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(ParamError::Epsilon(epsilon));
        }
        let f = (n.max(1) as f64).powf(epsilon);
        // n^ε is often an integer up to rounding noise (1000^(1/3))
        let b = if (f - f.round()).abs() < 1e-9 { f.round() } else { f.ceil() };
        Ok(BParams {
            epsilon: Some(epsilon),
            b: (b as usize).max(1),
            t_max: (1.0 / epsilon - 1e-9).ceil() as usize,
        })
    }

    pub fn with_b(n: usize, b: usize) -> Result<Self, ParamError> {
        if b == 0 {
            return Err(ParamError::ZeroB);
        }
        Ok(BParams {
            epsilon: None,
            b,
            t_max: rank_bound(n, b),
        })
    }

    /// Keep ε for reporting but use an explicit `b`.
    pub fn override_b(self, n: usize, b: usize) -> Result<Self, ParamError> {
        Ok(BParams {
            epsilon: self.epsilon,
            ..Self::with_b(n, b)?
        })
    }
}

/// Upper bound on any staircase size for `n` elements: the largest `t`
/// with `|E_t| > b` when every level shrinks by a factor `b + 1`.
pub fn rank_bound(n: usize, b: usize) -> usize {
    let mut size = n;
    let mut r = 1;
    while size > b {
        r += 1;
        size = size.div_ceil(b + 1);
    }
    r - 1
}

/// Recursive pointer of level `r` at `e ∈ E_r`.
///
/// For `r ≥ 2`, `x` points at `e` and `z` at `π_{r−1}^b(e)`, both on level
/// `r − 1`. Cloning is deep and charges the meter again.
#[derive(Clone, Debug)]
pub struct Ptr {
    r: usize,
    e: usize,
    x: Option<Box<Ptr>>,
    z: Option<Box<Ptr>>,
    _words: Charge,
}

impl Ptr {
    pub fn leaf(e: usize, meter: &SpaceMeter) -> Self {
        Ptr {
            r: 1,
            e,
            x: None,
            z: None,
            _words: meter.charge(PTR_WORDS),
        }
    }

    fn node(x: Ptr, z: Ptr, meter: &SpaceMeter) -> Self {
        Ptr {
            r: x.r + 1,
            e: x.e,
            x: Some(Box::new(x)),
            z: Some(Box::new(z)),
            _words: meter.charge(PTR_WORDS),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn x(&self) -> Option<&Ptr> {
        self.x.as_deref()
    }

    pub fn z(&self) -> Option<&Ptr> {
        self.z.as_deref()
    }

    /// Size of the staircase this pointer is the right part of.
    pub fn rank(&self) -> usize {
        self.r - 1
    }

    /// Number of nodes in the structure.
    pub fn nodes(&self) -> usize {
        1 + self.x.as_ref().map_or(0, |p| p.nodes()) + self.z.as_ref().map_or(0, |p| p.nodes())
    }

    /// End of the staircase whose right part this pointer holds.
    pub fn get_end(&self) -> usize {
        match &self.z {
            Some(z) => z.get_end(),
            None => self.e,
        }
    }

    /// Move from `e` to `π_r(e)`.
    pub fn advance<S: Successor + ?Sized>(&mut self, s: &S, b: usize) -> Result<(), Aborted> {
        if self.r == 1 {
            return match s.succ(self.e) {
                Value::Elem(next) => {
                    self.e = next;
                    Ok(())
                }
                Value::Null(_) => Err(Aborted),
            };
        }
        let (Some(x), Some(z)) = (self.x.as_mut(), self.z.as_mut()) else {
            unreachable!("level {} pointer without children", self.r)
        };
        let mut y = z.clone();
        for _ in 0..b {
            z.advance(s, b)?;
        }
        loop {
            let m = min_range3(s, x.e, y.e, z.e).map_err(|_| Aborted)?;
            if m == y.e {
                break;
            }
            x.advance(s, b)?;
            y.advance(s, b)?;
            z.advance(s, b)?;
        }
        self.e = y.e;
        *x = y;
        Ok(())
    }
}

/// Build the best b-staircase from `i`, returning the pointer to its right
/// part (middle at `.e()`), or `None` when a proper almost b-staircase
/// fails to be a b-staircase.
pub fn best_b_staircase<S: Successor + ?Sized>(s: &S, b: usize, i: usize) -> Option<Ptr> {
    let meter = s.meter();
    // x, j, m_e
    let _locals = meter.charge(3);
    let mut p = Ptr::leaf(i, meter);
    let mut x = i;
    for _ in 0..b {
        match s.succ(x) {
            Value::Elem(y) if y != i => x = y,
            _ => return Some(p),
        }
    }
    loop {
        let g = p.clone();
        let mut m_e = p.e;
        let mut m_p = None;
        for j in 1..=2 * b {
            if p.advance(s, b).is_err() {
                return Some(g);
            }
            if j <= b && p.e == g.e {
                return Some(g);
            }
            if j == b {
                m_p = Some(p.clone());
            }
            m_e = m_e.min(p.e);
        }
        let m_p = m_p.expect("2b ≥ b advances");
        if m_p.e != m_e {
            return None;
        }
        drop(g);
        p = Ptr::node(m_p, p, meter);
    }
}

/// `i` is the leader iff its best b-staircase exists and its middle is the
/// minimum of the cycle.
pub fn process_blocal<S: Successor + ?Sized>(s: &S, b: usize, i: usize) -> bool {
    match best_b_staircase(s, b, i) {
        Some(p) => min_range(s, i, Some(i)).is_ok_and(|m| m == p.e),
        None => false,
    }
}
