//! Mid-run state checks for the two inversion drivers.
//!
//! Every original cycle `C` with leader `L` and best-staircase end `i'` must
//! be, after processing `1..=i`:
//! - untouched while `i < L`,
//! - inverted and cut into a component starting at `i'` while
//!   `L ≤ i < i'` (only hard cycles),
//! - fully inverted afterwards.

use std::collections::HashMap;

use thiserror::Error;

use super::{components, cycles, ref_inverse, ComponentView, Kind, LevelSets};
use crate::table::Value;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("after {i}: malformed table: {msg}")]
    Malformed { i: usize, msg: String },
    #[error("after {i}: cycle of {min}: {msg}")]
    State { i: usize, min: usize, msg: String },
}

#[derive(Clone, Debug)]
struct CycleFacts {
    min: usize,
    elems: Vec<usize>,
    leader: usize,
    end: usize,
    inv_leader: usize,
}

fn facts(orig: &[usize], b: usize, leader_of: impl Fn(&LevelSets) -> Option<usize>) -> Vec<CycleFacts> {
    let inv = ref_inverse(orig);
    cycles(orig)
        .into_iter()
        .map(|c| {
            let lv = LevelSets::new(c.clone(), true, b);
            let leader = leader_of(&lv).expect("every cycle has a leader");
            let end = lv.best_staircase(leader).expect("leaders have staircases").end;
            let inv_cycle = cycles(&inv).into_iter().find(|d| d.contains(&c[0])).unwrap();
            let inv_leader = leader_of(&LevelSets::new(inv_cycle, true, b)).unwrap();
            let mut elems = c;
            let min = elems[0];
            elems.sort_unstable();
            CycleFacts { min, elems, leader, end, inv_leader }
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Stage {
    Untouched,
    Cut,
    Inverted,
}

impl CycleFacts {
    fn stage(&self, i: usize) -> Stage {
        if i < self.leader {
            Stage::Untouched
        } else if i < self.end {
            Stage::Cut
        } else {
            Stage::Inverted
        }
    }

    fn err(&self, i: usize, msg: impl Into<String>) -> AuditError {
        AuditError::State { i, min: self.min, msg: msg.into() }
    }

    fn expect_plain(&self, values: &[Value], target: &[usize], i: usize, what: &str) -> Result<(), AuditError> {
        match self.elems.iter().find(|&&x| values[x - 1] != Value::Elem(target[x - 1])) {
            Some(&x) => Err(self.err(i, format!("{what}: π({x}) = {}", values[x - 1]))),
            None => Ok(()),
        }
    }

    /// The component of a cut cycle: inverse edges except at its end.
    fn expect_cut<'a>(
        &self,
        comps: &'a [ComponentView],
        values: &[Value],
        inv: &[usize],
        i: usize,
    ) -> Result<&'a ComponentView, AuditError> {
        let comp = comps
            .iter()
            .find(|c| c.kind != Kind::Cycle && c.start == self.end)
            .ok_or_else(|| self.err(i, format!("no component starts at {}", self.end)))?;
        let mut got = comp.elems.clone();
        got.sort_unstable();
        if got != self.elems {
            return Err(self.err(i, "component and cycle differ"));
        }
        if inv[comp.end - 1] != comp.start {
            return Err(self.err(i, format!("component ends at {}, not before its start", comp.end)));
        }
        for &x in &comp.elems {
            if x != comp.end && values[x - 1] != Value::Elem(inv[x - 1]) {
                return Err(self.err(i, format!("π({x}) is not inverted")));
            }
        }
        if self.inv_leader != comp.start {
            return Err(self.err(i, format!("start {} is not the leader {}", comp.start, self.inv_leader)));
        }
        Ok(comp)
    }
}

/// Checks the three-state lifecycle of the `O(log n)`-word inversion.
#[derive(Clone, Debug)]
pub struct LogspaceAudit {
    orig: Vec<usize>,
    inv: Vec<usize>,
    cycles: Vec<CycleFacts>,
    pub checks: usize,
}

impl LogspaceAudit {
    pub fn new(orig: &[usize]) -> Self {
        // b = 1 levels; the leader is the unique start of a best staircase
        let cycles = facts(orig, 1, |lv| {
            let with: Vec<_> = lv.seq().iter().copied().filter(|&x| lv.best_staircase(x).is_some()).collect();
            (with.len() == 1).then(|| with[0])
        });
        LogspaceAudit { orig: orig.to_vec(), inv: ref_inverse(orig), cycles, checks: 0 }
    }

    pub fn check(&mut self, values: &[Value], i: usize) -> Result<(), AuditError> {
        self.checks += 1;
        let comps = components(values).map_err(|msg| AuditError::Malformed { i, msg })?;
        if comps.iter().any(|c| c.kind == Kind::Sigma) {
            return Err(AuditError::Malformed { i, msg: "sigma in logspace run".into() });
        }
        for f in &self.cycles {
            match f.stage(i) {
                Stage::Untouched => f.expect_plain(values, &self.orig, i, "not yet inverted")?,
                Stage::Inverted => f.expect_plain(values, &self.inv, i, "should be inverted")?,
                Stage::Cut => {
                    let comp = f.expect_cut(&comps, values, &self.inv, i)?;
                    let lv = LevelSets::new(comp.elems.clone(), false, 1);
                    let ranks: Vec<_> = comp.elems.iter().map(|&x| lv.extended_rank(x)).collect();
                    let top = ranks.iter().flatten().max().copied();
                    let at_top = ranks.iter().filter(|r| r.is_some() && **r == top).count();
                    if ranks[0].is_none() || ranks[0] != top || at_top != 1 {
                        return Err(f.err(i, "path start is not the unique top extended rank"));
                    }
                    let want = ranks[0].unwrap().null_type();
                    if comp.null_type != Some(want) {
                        return Err(f.err(i, format!("null type {:?}, want {want}", comp.null_type)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Checks the component invariants of the b-local inversion: starts are
/// leaders and outstanding, a sigma's intersection is the leader of its
/// loop (for b = 1 the only loop element with a best staircase at all), and
/// each new sigma has fewer outstanding elements.
#[derive(Clone, Debug)]
pub struct BlocalAudit {
    b: usize,
    orig: Vec<usize>,
    inv: Vec<usize>,
    cycles: Vec<CycleFacts>,
    /// Per cycle: the element the component's end points to, and the
    /// outstanding count then.
    last: HashMap<usize, (Value, usize)>,
    pub checks: usize,
    pub sigmas_seen: usize,
}

impl BlocalAudit {
    pub fn new(orig: &[usize], b: usize) -> Self {
        let cycles = facts(orig, b, |lv| {
            let by_def = lv.leaders_by_definition();
            (by_def == [lv.ref_leader()]).then(|| by_def[0])
        });
        BlocalAudit {
            b,
            orig: orig.to_vec(),
            inv: ref_inverse(orig),
            cycles,
            last: HashMap::new(),
            checks: 0,
            sigmas_seen: 0,
        }
    }

    pub fn check(&mut self, values: &[Value], i: usize) -> Result<(), AuditError> {
        self.checks += 1;
        let comps = components(values).map_err(|msg| AuditError::Malformed { i, msg })?;
        for f in &self.cycles {
            match f.stage(i) {
                Stage::Untouched => f.expect_plain(values, &self.orig, i, "not yet inverted")?,
                Stage::Inverted => f.expect_plain(values, &self.inv, i, "should be inverted")?,
                Stage::Cut => {
                    let comp = f.expect_cut(&comps, values, &self.inv, i)?;
                    // a sigma's tail ranks are those of the path its end
                    // would be if it pointed to a null
                    let lv = LevelSets::new(comp.elems.clone(), false, self.b);
                    let ranks: Vec<_> = comp.tail().iter().map(|&x| lv.rank(x)).collect();
                    let top = ranks.iter().flatten().max().copied();
                    if ranks[0].is_none() || ranks[0] != top {
                        return Err(f.err(i, "start is not outstanding"));
                    }
                    let outstanding = ranks.iter().filter(|&&r| r == top).count();
                    match comp.kind {
                        Kind::Path => {
                            let want = top.unwrap() + 1;
                            if comp.null_type != Some(want) {
                                return Err(f.err(i, format!("null type {:?}, want {want}", comp.null_type)));
                            }
                        }
                        Kind::Sigma => {
                            self.sigmas_seen += 1;
                            let c = comp.intersection.unwrap();
                            if c > i {
                                return Err(f.err(i, format!("intersection {c} not processed yet")));
                            }
                            let lp = LevelSets::new(comp.loop_elems().to_vec(), true, self.b);
                            // for b = 1 best staircases are unique on a cycle;
                            // for larger b only the leader is
                            let with: Vec<_> = if self.b == 1 {
                                comp.loop_elems()
                                    .iter()
                                    .copied()
                                    .filter(|&x| lp.best_staircase(x).is_some())
                                    .collect()
                            } else {
                                lp.leaders_by_definition()
                            };
                            if with != [c] {
                                return Err(f.err(i, format!("loop leaders {with:?}, want [{c}]")));
                            }
                        }
                        Kind::Cycle => unreachable!(),
                    }
                    let target = values[comp.end - 1];
                    if let Some(&(prev_target, prev_count)) = self.last.get(&f.min) {
                        if prev_target != target && comp.kind == Kind::Sigma && outstanding >= prev_count {
                            return Err(f.err(i, format!("outstanding count {prev_count} → {outstanding} on a new sigma")));
                        }
                    }
                    self.last.insert(f.min, (target, outstanding));
                }
            }
        }
        Ok(())
    }
}
