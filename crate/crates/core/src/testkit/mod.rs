//! Brute-force references for the in-place algorithms.
//!
//! Everything here uses `O(n)` space or more and trades speed for being
//! obviously correct; it exists to check the real algorithms against.

mod audit;
mod gen;
mod levels;

pub use audit::{AuditError, BlocalAudit, LogspaceAudit};
pub use gen::{exhaustive, failure_record, gen, path_from_order, random_perm, rotation, sigma, sigma_from_order, GenError, Instance, Shape};
pub use levels::{LevelSets, RefStaircase};

use crate::table::Value;

/// `π⁻¹` of a 1-based permutation.
pub fn ref_inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v - 1] = i + 1;
    }
    inv
}

/// `A[π(j)] = a_j` for every `j`.
pub fn ref_permute<T: Clone>(a: &[T], p: &[usize]) -> Vec<T> {
    let mut out = a.to_vec();
    for (j, &v) in p.iter().enumerate() {
        out[v - 1] = a[j].clone();
    }
    out
}

/// Cycles of a permutation, each listed from its minimum along π.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 1..=p.len() {
        if seen[start - 1] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = start;
        while !seen[x - 1] {
            seen[x - 1] = true;
            c.push(x);
            x = p[x - 1];
        }
        out.push(c);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Cycle,
    Path,
    Sigma,
}

/// One connected piece of a partial function with in-degree at most two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentView {
    pub kind: Kind,
    /// Cycles start at their minimum; paths and sigmas at their start and
    /// end at their end.
    pub elems: Vec<usize>,
    pub start: usize,
    pub end: usize,
    pub intersection: Option<usize>,
    /// Elements before the intersection.
    pub tail_len: usize,
    pub loop_len: usize,
    /// Type of the null stored at the end of a path.
    pub null_type: Option<usize>,
}

impl ComponentView {
    /// The loop of a sigma, from its intersection.
    pub fn loop_elems(&self) -> &[usize] {
        &self.elems[self.tail_len..]
    }

    pub fn tail(&self) -> &[usize] {
        &self.elems[..self.tail_len]
    }
}

/// Split `values` (`values[i - 1] = π(i)`) into cycles, paths and sigmas.
///
/// Fails on anything else: an element with three predecessors, two tails
/// merging, or a component with two two-predecessor elements.
pub fn components(values: &[Value]) -> Result<Vec<ComponentView>, String> {
    let n = values.len();
    let mut indeg = vec![0usize; n + 1];
    for v in values {
        if let Value::Elem(y) = *v {
            if y == 0 || y > n {
                return Err(format!("value {y} outside 1..={n}"));
            }
            indeg[y] += 1;
        }
    }
    if let Some(x) = (1..=n).find(|&x| indeg[x] > 2) {
        return Err(format!("{x} has {} predecessors", indeg[x]));
    }
    let mut owner = vec![usize::MAX; n + 1];
    let mut out = Vec::new();
    for start in (1..=n).filter(|&x| indeg[x] == 0) {
        let id = out.len();
        let mut elems = Vec::new();
        let mut x = start;
        let view = loop {
            if owner[x] == id {
                let at = elems.iter().position(|&e| e == x).expect("visited");
                let end = *elems.last().expect("non-empty");
                break ComponentView {
                    kind: Kind::Sigma,
                    start,
                    end,
                    intersection: Some(x),
                    tail_len: at,
                    loop_len: elems.len() - at,
                    elems,
                    null_type: None,
                };
            }
            if owner[x] != usize::MAX {
                return Err(format!("tails merge at {x}"));
            }
            owner[x] = id;
            elems.push(x);
            match values[x - 1] {
                Value::Elem(y) => x = y,
                Value::Null(t) => {
                    break ComponentView {
                        kind: Kind::Path,
                        start,
                        end: x,
                        intersection: None,
                        tail_len: elems.len(),
                        loop_len: 0,
                        elems,
                        null_type: Some(t),
                    }
                }
            }
        };
        if view.kind == Kind::Sigma && view.loop_elems().iter().any(|&e| e != view.intersection.unwrap() && indeg[e] != 1) {
            return Err(format!("sigma from {start} has a second junction"));
        }
        out.push(view);
    }
    for start in 1..=n {
        if owner[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut elems = Vec::new();
        let mut x = start;
        while owner[x] == usize::MAX {
            owner[x] = id;
            elems.push(x);
            match values[x - 1] {
                Value::Elem(y) => x = y,
                Value::Null(_) => return Err(format!("{start} reaches a null but has a predecessor")),
            }
        }
        if x != start {
            return Err(format!("{start} runs into another component at {x}"));
        }
        out.push(ComponentView {
            kind: Kind::Cycle,
            start,
            end: *elems.last().unwrap(),
            intersection: None,
            tail_len: 0,
            loop_len: elems.len(),
            elems,
            null_type: None,
        });
    }
    Ok(out)
}
