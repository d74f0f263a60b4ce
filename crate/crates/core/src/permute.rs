//! Rearranging a data array so that `A[π(j)]` receives the old `A[j]`.

use thiserror::Error;

use crate::table::{Successor, Value};
use crate::{for_each_leader, LeaderAlgo};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermuteError {
    #[error("array has {got} values but the permutation has {n} elements")]
    Length { got: usize, n: usize },
    #[error("hit a null after {at}; permuting needs a total permutation")]
    NotTotal { at: usize },
}

/// Shift the values on the cycle through `i` one step forward along π.
///
/// `A[i]` serves as the carry, so no extra word beyond the cursor is used.
pub fn rotate_cycle<T, S: Successor + ?Sized>(
    data: &mut [T],
    s: &S,
    i: usize,
) -> Result<(), PermuteError> {
    if data.len() != s.n() {
        return Err(PermuteError::Length {
            got: data.len(),
            n: s.n(),
        });
    }
    let _cursor = s.meter().charge(1);
    let mut j = i;
    loop {
        match s.succ(j) {
            Value::Elem(next) if next == i => return Ok(()),
            Value::Elem(next) => {
                data.swap(i - 1, next - 1);
                j = next;
            }
            Value::Null(_) => return Err(PermuteError::NotTotal { at: j }),
        }
    }
}

/// Make every `A[i] = a_{π⁻¹(i)}`, rotating once per reported leader.
/// Returns the leaders in the order they were found.
pub fn permute<T, S: Successor + ?Sized>(
    data: &mut [T],
    s: &S,
    algo: LeaderAlgo,
) -> Result<Vec<usize>, PermuteError> {
    if data.len() != s.n() {
        return Err(PermuteError::Length {
            got: data.len(),
            n: s.n(),
        });
    }
    let mut leaders = Vec::new();
    let mut failure = None;
    for_each_leader(s, algo, |i| {
        if failure.is_none() {
            match rotate_cycle(data, s, i) {
                Ok(()) => leaders.push(i),
                Err(e) => failure = Some(e),
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(leaders),
    }
}
