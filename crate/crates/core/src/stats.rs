//! Process-wide counters for the structural bounds the algorithms rely on.
//!
//! Every time a bound is checked at run time the matching counter is
//! bumped, together with a violation counter. The bounds are also asserted
//! where a violation would make the output wrong, so the violation
//! counters exist for reporting.

use core::sync::atomic::{AtomicU64, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// At most `6n - 12` boundary intersections on plane outcomes.
    IntersectionCutoff,
    /// At most `3n - 6` edges on plane outcomes.
    EdgeCutoff,
    /// At most 18 large sites in a triangle-free grid cell.
    LargeSitesPerCell,
    /// At most 25 cells in a disk neighborhood.
    NeighborhoodCells,
    /// At most 6 small-to-large incoming edges without a short triangle.
    TxIndegree,
}

pub const ALL: [Check; 5] = [
    Check::IntersectionCutoff,
    Check::EdgeCutoff,
    Check::LargeSitesPerCell,
    Check::NeighborhoodCells,
    Check::TxIndegree,
];

static CHECKS: [AtomicU64; 5] = [const { AtomicU64::new(0) }; 5];
static VIOLATIONS: [AtomicU64; 5] = [const { AtomicU64::new(0) }; 5];

fn slot(c: Check) -> usize {
    c as usize
}

/// Records one evaluation of a bound. For the two cutoffs a `false` is not
/// a violation but the signal to abort with a triangle; callers only pass
/// `false` for those when aborting.
pub fn record(c: Check, holds: bool) {
    CHECKS[slot(c)].fetch_add(1, Ordering::Relaxed);
    if !holds && !matches!(c, Check::IntersectionCutoff | Check::EdgeCutoff) {
        VIOLATIONS[slot(c)].fetch_add(1, Ordering::Relaxed);
    }
}

/// `(checks, violations)` so far.
pub fn counts(c: Check) -> (u64, u64) {
    (
        CHECKS[slot(c)].load(Ordering::Relaxed),
        VIOLATIONS[slot(c)].load(Ordering::Relaxed),
    )
}
