use std::collections::HashMap;

use crate::logspace::ExtendedRank;

/// Explicit levels `E_1 ⊇ E_2 ⊇ …` of one cycle or path.
///
/// `E_1` is the whole sequence; `E_{r+1}` keeps the elements of `E_r`
/// smaller than every defined `π_r^k`, `0 < |k| ≤ b`. On a path the
/// comparisons past either end are skipped, so the path minimum survives
/// forever; a cycle's levels end empty.
#[derive(Clone, Debug)]
pub struct LevelSets {
    seq: Vec<usize>,
    cyclic: bool,
    b: usize,
    /// Positions (into `seq`) of each level, in sequence order.
    levels: Vec<Vec<usize>>,
    /// For each level, position → index within the level.
    index: Vec<HashMap<usize, usize>>,
    pos: HashMap<usize, usize>,
}

/// A staircase found by brute force.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefStaircase {
    pub middle: usize,
    pub end: usize,
    pub size: usize,
}

impl LevelSets {
    /// `seq` lists the elements in π order: a cycle from any element, a path
    /// from its start.
    pub fn new(seq: Vec<usize>, cyclic: bool, b: usize) -> Self {
        assert!(b >= 1 && !seq.is_empty());
        let pos = seq.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let mut levels = vec![(0..seq.len()).collect::<Vec<_>>()];
        loop {
            let cur = levels.last().unwrap();
            if cur.is_empty() || (!cyclic && cur.len() == 1) {
                break;
            }
            let s = cur.len() as isize;
            let next: Vec<usize> = (0..cur.len())
                .filter(|&j| {
                    let v = seq[cur[j]];
                    (1..=b as isize).all(|k| {
                        [j as isize + k, j as isize - k].into_iter().all(|q| {
                            let q = if cyclic {
                                q.rem_euclid(s)
                            } else if (0..s).contains(&q) {
                                q
                            } else {
                                return true;
                            };
                            seq[cur[q as usize]] > v
                        })
                    })
                })
                .map(|j| cur[j])
                .collect();
            levels.push(next);
        }
        let index = levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(j, &p)| (p, j)).collect())
            .collect();
        LevelSets { seq, cyclic, b, levels, index, pos }
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    fn lvl(&self, r: usize) -> usize {
        assert!(r >= 1);
        // a path's last level is a singleton that repeats forever
        if self.cyclic {
            r - 1
        } else {
            (r - 1).min(self.levels.len() - 1)
        }
    }

    fn level_positions(&self, r: usize) -> &[usize] {
        self.levels.get(self.lvl(r)).map_or(&[], |l| l.as_slice())
    }

    /// Number of materialized levels (the last is empty or, on a path, a
    /// singleton).
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Elements of `E_r` in sequence order.
    pub fn level(&self, r: usize) -> Vec<usize> {
        self.level_positions(r).iter().map(|&p| self.seq[p]).collect()
    }

    pub fn size(&self, r: usize) -> usize {
        self.level_positions(r).len()
    }

    pub fn contains(&self, r: usize, x: usize) -> bool {
        let l = self.lvl(r);
        match (self.pos.get(&x), self.index.get(l)) {
            (Some(p), Some(ix)) => ix.contains_key(p),
            _ => false,
        }
    }

    /// `π_r^k(x)` for `x ∈ E_r`; `None` past the end of a path.
    pub fn step(&self, r: usize, x: usize, k: isize) -> Option<usize> {
        let l = self.lvl(r);
        let lv = self.levels.get(l)?;
        let j = *self.index[l].get(self.pos.get(&x)?)? as isize + k;
        let s = lv.len() as isize;
        let q = if self.cyclic {
            j.rem_euclid(s)
        } else if (0..s).contains(&j) {
            j
        } else {
            return None;
        };
        Some(self.seq[lv[q as usize]])
    }

    /// `π_r(x)`.
    pub fn succ(&self, r: usize, x: usize) -> Option<usize> {
        self.step(r, x, 1)
    }

    /// Largest `t` with `|E_t| > b`, or 0.
    pub fn top(&self) -> usize {
        (1..=self.levels.len()).filter(|&r| self.size(r) > self.b).max().unwrap_or(0)
    }

    /// Middle and end of the b-staircase of size `r` from `i`, if any.
    pub fn staircase(&self, i: usize, r: usize) -> Option<(usize, usize)> {
        let b = self.b as isize;
        let mut cur = i;
        for k in 1..=r {
            cur = self.step(k, cur, b)?;
            if !self.contains(k + 1, cur) {
                return None;
            }
        }
        let m = cur;
        for k in (1..=r).rev() {
            cur = self.step(k, cur, b)?;
        }
        Some((m, cur))
    }

    /// Whether there is a proper almost b-staircase of size `r` from `i`.
    pub fn proper_almost(&self, i: usize, r: usize) -> bool {
        if self.size(r) <= self.b {
            return false;
        }
        let b = self.b as isize;
        let mut cur = i;
        for k in 1..=r {
            if !self.contains(k, cur) {
                return false;
            }
            match self.step(k, cur, b) {
                Some(x) => cur = x,
                None => return false,
            }
        }
        (1..=r).rev().try_fold(cur, |x, k| self.step(k, x, b)).is_some()
    }

    /// The best b-staircase from `i`: a staircase of size `r` with no
    /// proper almost staircase of size `r + 1`.
    pub fn best_staircase(&self, i: usize) -> Option<RefStaircase> {
        let mut r = 0;
        loop {
            let (middle, end) = self.staircase(i, r)?;
            if !self.proper_almost(i, r + 1) {
                return Some(RefStaircase { middle, end, size: r });
            }
            r += 1;
        }
    }

    pub fn rank(&self, i: usize) -> Option<usize> {
        self.best_staircase(i).map(|s| s.size)
    }

    /// Whether a half staircase of size `r` starts at `i`.
    pub fn half_staircase(&self, i: usize, r: usize) -> bool {
        let b = self.b as isize;
        let mut cur = i;
        for k in 1..=r {
            if !self.contains(k, cur) {
                return false;
            }
            match self.step(k, cur, b) {
                Some(x) => cur = x,
                None => return false,
            }
        }
        (1..r).rev().try_fold(cur, |x, k| self.step(k, x, b)).is_some()
    }

    pub fn extended_rank(&self, i: usize) -> Option<ExtendedRank> {
        let t = self.rank(i)?;
        Some(ExtendedRank { t, h: self.half_staircase(i, t + 1) })
    }

    /// The leader of a cycle: `π_1^{-b}(… π_t^{-b}(m) …)` for the minimum `m`.
    pub fn ref_leader(&self) -> usize {
        assert!(self.cyclic, "leaders by formula are defined on cycles");
        let m = *self.seq.iter().min().unwrap();
        (1..=self.top()).rev().fold(m, |x, k| self.step(k, x, -(self.b as isize)).expect("cyclic"))
    }

    /// Elements with a best staircase whose middle is the minimum.
    pub fn leaders_by_definition(&self) -> Vec<usize> {
        let m = *self.seq.iter().min().unwrap();
        self.seq
            .iter()
            .copied()
            .filter(|&i| self.best_staircase(i).is_some_and(|s| s.middle == m))
            .collect()
    }

    /// Ranks along the sequence.
    pub fn ranks(&self) -> Vec<Option<usize>> {
        self.seq.iter().map(|&i| self.rank(i)).collect()
    }

    /// Elements of the largest rank.
    pub fn outstanding(&self) -> Vec<usize> {
        let ranks = self.ranks();
        let Some(top) = ranks.iter().flatten().max().copied() else {
            return Vec::new();
        };
        self.seq
            .iter()
            .zip(&ranks)
            .filter(|(_, r)| **r == Some(top))
            .map(|(&x, _)| x)
            .collect()
    }

    pub fn count_outstanding(&self) -> usize {
        self.outstanding().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_levels() {
        let l = LevelSets::new(vec![1, 2, 3, 4], true, 1);
        assert_eq!(l.level(2), vec![1]);
        assert_eq!(l.succ(2, 1), Some(1));
        assert_eq!(l.level(3), Vec::<usize>::new());
        let l = LevelSets::new(vec![1, 2, 3, 4], true, 2);
        assert_eq!(l.level(2), vec![1]);
        assert_eq!(l.ref_leader(), 3);
        assert_eq!(LevelSets::new(vec![1, 2, 3, 4], true, 1).ref_leader(), 4);
        assert_eq!(LevelSets::new(vec![5], true, 1).level(2), Vec::<usize>::new());
    }

    #[test]
    fn path_ranks() {
        let l = LevelSets::new(vec![4, 1, 2, 3], false, 1);
        assert_eq!(l.extended_rank(4), Some(ExtendedRank { t: 1, h: false }));
        assert_eq!(l.extended_rank(3), Some(ExtendedRank { t: 0, h: false }));
        assert_eq!(l.extended_rank(1), None);
        assert_eq!(l.extended_rank(2), Some(ExtendedRank { t: 0, h: true }));
        assert_eq!(l.count_outstanding(), 1);
        let l = LevelSets::new(vec![7], false, 1);
        assert_eq!(l.extended_rank(7), Some(ExtendedRank { t: 0, h: false }));
        assert_eq!(l.count_outstanding(), 1);
    }

    #[test]
    fn cycle_staircases() {
        let l = LevelSets::new(vec![1, 2, 3, 4], true, 1);
        assert_eq!(l.best_staircase(4), Some(RefStaircase { middle: 1, end: 2, size: 1 }));
        assert_eq!(l.best_staircase(1), None);
        assert_eq!(l.extended_rank(4), Some(ExtendedRank { t: 1, h: true }));
        let l = LevelSets::new(vec![3], true, 1);
        assert_eq!(l.extended_rank(3), Some(ExtendedRank { t: 0, h: true }));
    }
}
