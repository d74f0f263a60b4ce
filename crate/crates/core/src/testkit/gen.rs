use std::fmt;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::table::Value;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("{0} needs at least one element")]
    Empty(&'static str),
    #[error("exhaustive enumeration is limited to n ≤ 10, got {0}")]
    TooLarge(usize),
}

/// Instance families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    RandomPerm(usize),
    Rotation(usize),
    /// `p` tail elements feeding a loop of `l` elements.
    Sigma { p: usize, l: usize },
    Path(usize),
    Exhaustive(usize),
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::RandomPerm(n) => write!(f, "random_perm({n})"),
            Shape::Rotation(n) => write!(f, "rotation({n})"),
            Shape::Sigma { p, l } => write!(f, "sigma({p},{l})"),
            Shape::Path(n) => write!(f, "path({n})"),
            Shape::Exhaustive(n) => write!(f, "exhaustive({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Perm(Vec<usize>),
    Partial(Vec<Value>),
    All(Vec<Vec<usize>>),
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    p.shuffle(rng);
    p
}

/// `i ↦ i + 1`, `n ↦ 1`.
pub fn rotation(n: usize) -> Vec<usize> {
    (2..=n).chain((n > 0).then_some(1)).collect()
}

/// The path visiting `order` and ending in `⊥_null_type`.
pub fn path_from_order(order: &[usize], null_type: usize) -> Vec<Value> {
    let mut v = vec![Value::Null(null_type); order.len()];
    for w in order.windows(2) {
        v[w[0] - 1] = Value::Elem(w[1]);
    }
    v
}

/// The sigma visiting `order`, whose last element points back to
/// `order[p]`.
pub fn sigma_from_order(order: &[usize], p: usize) -> Vec<Value> {
    let mut v = path_from_order(order, 0);
    v[order[order.len() - 1] - 1] = Value::Elem(order[p]);
    v
}

/// A random sigma with `p` tail and `l ≥ 1` loop elements.
pub fn sigma(rng: &mut impl Rng, p: usize, l: usize) -> Vec<Value> {
    sigma_from_order(&random_perm(rng, p + l), p)
}

/// All permutations of `[n]` in lexicographic order.
pub fn exhaustive(n: usize) -> Vec<Vec<usize>> {
    (1..=n).permutations(n).collect()
}

/// Deterministic instance for `(seed, shape)`.
pub fn gen(seed: u64, shape: Shape) -> Result<Instance, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match shape {
        Shape::RandomPerm(0) | Shape::Rotation(0) | Shape::Path(0) => {
            return Err(GenError::Empty("permutation"))
        }
        Shape::Sigma { l: 0, .. } => return Err(GenError::Empty("sigma loop")),
        Shape::Exhaustive(n) if n > 10 => return Err(GenError::TooLarge(n)),
        Shape::RandomPerm(n) => Instance::Perm(random_perm(&mut rng, n)),
        Shape::Rotation(n) => Instance::Perm(rotation(n)),
        Shape::Sigma { p, l } => Instance::Partial(sigma(&mut rng, p, l)),
        Shape::Path(n) => Instance::Partial(path_from_order(&random_perm(&mut rng, n), 1)),
        Shape::Exhaustive(n) => Instance::All(exhaustive(n)),
    })
}

/// A reproducible description of a failed check.
pub fn failure_record(seed: u64, shape: Shape, trace: &[String]) -> String {
    let mut out = format!("seed={seed} shape={shape}\n");
    for (k, step) in trace.iter().enumerate() {
        out += &format!("  {k:>4}: {step}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::{components, Kind};

    #[test]
    fn shapes() {
        assert_eq!(rotation(4), vec![2, 3, 4, 1]);
        assert_eq!(exhaustive(3).len(), 6);
        assert_eq!(
            sigma_from_order(&[5, 1, 2, 3, 4], 2),
            [2, 3, 4, 2, 1].map(Value::Elem).to_vec()
        );
        let s = gen(3, Shape::Sigma { p: 1, l: 3 }).unwrap();
        let Instance::Partial(v) = s else { panic!() };
        let c = components(&v).unwrap();
        assert_eq!((c.len(), c[0].kind, c[0].tail_len, c[0].loop_len), (1, Kind::Sigma, 1, 3));
        let twice = (1..=4).filter(|&x| v.iter().filter(|&&y| y == Value::Elem(x)).count() == 2);
        assert_eq!(twice.count(), 1);
    }

    #[test]
    fn deterministic() {
        assert_eq!(gen(7, Shape::RandomPerm(50)), gen(7, Shape::RandomPerm(50)));
        assert_ne!(gen(7, Shape::RandomPerm(50)), gen(8, Shape::RandomPerm(50)));
        assert!(gen(1, Shape::Rotation(0)).is_err());
        assert!(gen(1, Shape::Sigma { p: 3, l: 0 }).is_err());
        let rec = failure_record(7, Shape::Path(4), &["process(2)".into()]);
        assert!(rec.starts_with("seed=7 shape=path(4)"));
    }
}
