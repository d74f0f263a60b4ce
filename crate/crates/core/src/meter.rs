//! Auxiliary-space accounting.
//!
//! A word is one integer of magnitude at most `n` (plus a few tag bits).
//! Booleans and level counters are charged one word each.

use std::cell::{Cell, RefCell};
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeterError {
    #[error("scope {released} released while scope {top:?} is innermost")]
    OutOfOrder { released: u64, top: Option<u64> },
}

#[derive(Default)]
struct Inner {
    live: Cell<usize>,
    peak: Cell<usize>,
    next_id: Cell<u64>,
    scopes: RefCell<Vec<(u64, usize)>>,
}

/// Shared handle to a live/peak word counter.
///
/// Cloning the handle shares the counter. Algorithms charge words either
/// through explicit LIFO scopes ([`SpaceMeter::enter`] / [`SpaceMeter::release`])
/// or through [`Charge`] guards that give the words back on drop.
#[derive(Clone, Default)]
pub struct SpaceMeter(Rc<Inner>);

impl fmt::Debug for SpaceMeter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpaceMeter")
            .field("live", &self.live())
            .field("peak", &self.peak())
            .finish()
    }
}

/// Token for a LIFO scope opened with [`SpaceMeter::enter`].
#[must_use = "a scope must be released"]
#[derive(Debug)]
pub struct ScopeToken {
    id: u64,
}

impl SpaceMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn live(&self) -> usize {
        self.0.live.get()
    }

    pub fn peak(&self) -> usize {
        self.0.peak.get()
    }

    /// Forget the peak and start measuring from the current live count.
    pub fn reset_peak(&self) {
        self.0.peak.set(self.0.live.get());
    }

    fn add(&self, words: usize) {
        let live = self.0.live.get() + words;
        self.0.live.set(live);
        if live > self.0.peak.get() {
            self.0.peak.set(live);
        }
    }

    fn sub(&self, words: usize) {
        let live = self.0.live.get();
        debug_assert!(live >= words, "meter underflow");
        self.0.live.set(live.saturating_sub(words));
    }

    pub fn enter(&self, words: usize) -> ScopeToken {
        let id = self.0.next_id.get();
        self.0.next_id.set(id + 1);
        self.0.scopes.borrow_mut().push((id, words));
        self.add(words);
        ScopeToken { id }
    }

    /// Close a scope. Only the innermost open scope may be released.
    pub fn release(&self, token: ScopeToken) -> Result<(), MeterError> {
        let mut scopes = self.0.scopes.borrow_mut();
        match scopes.last() {
            Some(&(id, words)) if id == token.id => {
                scopes.pop();
                drop(scopes);
                self.sub(words);
                Ok(())
            }
            top => Err(MeterError::OutOfOrder {
                released: token.id,
                top: top.map(|&(id, _)| id),
            }),
        }
    }

    /// Charge `words` until the returned guard is dropped.
    pub fn charge(&self, words: usize) -> Charge {
        self.add(words);
        Charge {
            meter: self.clone(),
            words,
        }
    }
}

/// Words held until drop. Guards may be dropped in any order.
#[derive(Debug)]
pub struct Charge {
    meter: SpaceMeter,
    words: usize,
}

impl Charge {
    pub fn words(&self) -> usize {
        self.words
    }
}

impl Clone for Charge {
    fn clone(&self) -> Self {
        self.meter.charge(self.words)
    }
}

impl Drop for Charge {
    fn drop(&mut self) {
        self.meter.sub(self.words);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_scopes_peak() {
        let m = SpaceMeter::new();
        let a = m.enter(3);
        let b = m.enter(2);
        assert_eq!(m.live(), 5);
        m.release(b).unwrap();
        m.release(a).unwrap();
        assert_eq!(m.live(), 0);
        assert_eq!(m.peak(), 5);
    }

    #[test]
    fn out_of_order_release_is_an_error() {
        let m = SpaceMeter::new();
        let a = m.enter(3);
        let _b = m.enter(2);
        assert!(matches!(m.release(a), Err(MeterError::OutOfOrder { .. })));
        assert_eq!(m.live(), 5);
    }

    #[test]
    fn charges_release_on_drop_in_any_order() {
        let m = SpaceMeter::new();
        let a = m.charge(4);
        let b = a.clone();
        let c = m.charge(1);
        assert_eq!(m.live(), 9);
        drop(a);
        drop(c);
        assert_eq!(m.live(), 4);
        drop(b);
        assert_eq!(m.live(), 0);
        assert_eq!(m.peak(), 9);
        m.reset_peak();
        assert_eq!(m.peak(), 0);
    }
}
