//! Comparison accounting.
//!
//! Every payoff and capacity comparison performed by a solver is routed
//! through a [`ComparisonLedger`], so comparison complexity is measured, not
//! asserted. Sign tests and integer rank/bucket operations are not payoff
//! comparisons and never touch the ledger. The ledger also carries an
//! arc-touch counter backing the linear-pass assertions in the test suites.

use std::cell::Cell;
use std::cmp::Ordering;

/// Sort key for a payoff or capacity: the raw value plus the owning
/// vertex/arc id as tie break. The id makes every key distinct, so all
/// comparisons are strict and deterministic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Key {
    pub value: f64,
    pub id: usize,
}

impl Key {
    pub fn new(value: f64, id: usize) -> Self {
        Key { value, id }
    }

    /// Total order by (value, id). Uninstrumented; solver code goes through
    /// [`ComparisonLedger::compare`] instead.
    pub fn raw_cmp(&self, other: &Key) -> Ordering {
        self.value
            .partial_cmp(&other.value)
            .expect("keys hold finite values")
            .then(self.id.cmp(&other.id))
    }
}

/// Counter of payoff/capacity comparisons, monotonically non-decreasing
/// within a solver run. One ledger per run; runs on different threads get
/// their own.
#[derive(Debug, Default)]
pub struct ComparisonLedger {
    comparisons: Cell<u64>,
    arc_touches: Cell<u64>,
}

impl ComparisonLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of key comparisons charged so far.
    pub fn count(&self) -> u64 {
        self.comparisons.get()
    }

    /// Number of arc-level operations performed by solvers (worklist pushes
    /// and pops, deletions, bucket inserts/extracts). Used to check that the
    /// retrograde passes stay linear.
    pub fn arc_touches(&self) -> u64 {
        self.arc_touches.get()
    }

    /// Charged comparison of two keys.
    pub fn compare(&self, a: Key, b: Key) -> Ordering {
        self.comparisons.set(self.comparisons.get() + 1);
        a.raw_cmp(&b)
    }

    /// Charged strict "less than".
    pub fn less(&self, a: Key, b: Key) -> bool {
        self.compare(a, b) == Ordering::Less
    }

    pub(crate) fn touch_arc(&self) {
        self.arc_touches.set(self.arc_touches.get() + 1);
    }
}
