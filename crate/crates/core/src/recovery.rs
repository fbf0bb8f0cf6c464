//! Strategy recovery from known values.
//!
//! Knowing `Val(v0)` alone is enough to act optimally from `v0`: bucket the
//! payoffs into at most five intervals around the value and 0, coarsen, and
//! solve the little game. Knowing all values is enough to act optimally
//! everywhere: cut the cross-value arcs and solve each single-value piece.
//! Both recoveries are linear-time and charge no ledger (the interval tests
//! compare against the two fixed pivots only).

use crate::error::{Error, Result};
use crate::game::{Solution, Srg, StrategyPair, VertexId, WeakSolution};
use crate::ledger::ComparisonLedger;
use crate::retrograde::solve_strong_sorted;

/// Recovers a weak solution at `v0` from its value `y`.
///
/// Terminals are split into the intervals `(-inf, min(y,0))`, `{min(y,0)}`,
/// `(min(y,0), max(y,0))`, `{max(y,0)}`, `(max(y,0), inf)` (degenerate
/// intervals collapse, empty ones are skipped), the groups are coarsened to
/// at most five terminals, and the coarse game is solved strongly. The
/// resulting pair is a weak solution of the original game at `v0`.
///
/// A wrong `y` is detected only when the coarse value at `v0` lands outside
/// the interval holding `y`.
pub fn recover_weak(game: &Srg, v0: VertexId, y: f64) -> Result<WeakSolution> {
    recover_weak_instrumented(game, v0, y, &ComparisonLedger::new())
}

/// As [`recover_weak`], with an instrument attached. Recovery charges no
/// comparisons (the interval tests are against two fixed pivots); the ledger
/// only picks up the arc touches of the coarse solve.
pub fn recover_weak_instrumented(
    game: &Srg,
    v0: VertexId,
    y: f64,
    ledger: &ComparisonLedger,
) -> Result<WeakSolution> {
    if !game.is_live(v0) {
        return Err(Error::UnknownVertex(v0));
    }
    if !y.is_finite() {
        return Err(Error::InconsistentInputValue { vertex: v0 });
    }
    if let Some(p) = game.payoff(v0) {
        if p != y {
            return Err(Error::InconsistentInputValue { vertex: v0 });
        }
    }
    let lo_pivot = y.min(0.0);
    let hi_pivot = y.max(0.0);
    let mut below = Vec::new();
    let mut at_lo = Vec::new();
    let mut mid = Vec::new();
    let mut at_hi = Vec::new();
    let mut above = Vec::new();
    for t in game.terminal_ids() {
        let p = game.payoff(t).unwrap();
        if p < lo_pivot {
            below.push(t);
        } else if p == lo_pivot {
            at_lo.push(t);
        } else if p < hi_pivot {
            mid.push(t);
        } else if p == hi_pivot {
            at_hi.push(t);
        } else {
            above.push(t);
        }
    }
    if lo_pivot == hi_pivot {
        // y == 0: the two point intervals coincide
        at_lo.append(&mut at_hi);
        debug_assert!(mid.is_empty());
    }
    // the group that must carry Val(v0)
    let y_bucket = if y == 0.0 { &at_lo } else if y < 0.0 { &at_lo } else { &at_hi };
    if y != 0.0 && y_bucket.is_empty() {
        // a nonzero value must be some terminal's payoff
        return Err(Error::InconsistentInputValue { vertex: v0 });
    }
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    let mut y_group: Option<usize> = None;
    for bucket in [&below, &at_lo, &mid, &at_hi, &above] {
        if bucket.is_empty() {
            continue;
        }
        if std::ptr::eq(bucket, y_bucket) {
            y_group = Some(groups.len());
        }
        groups.push(bucket.clone());
    }
    let before = ledger.count();
    let (solution, expected, check_vertex) = if groups.is_empty() {
        // no terminals at all: the whole game is worth 0
        (solve_strong_sorted(game, &[], ledger)?, 0.0, v0)
    } else {
        let (coarse, mapping) = game.coarsen(&groups)?;
        let order: Vec<VertexId> = mapping.iter().map(|(rep, _)| *rep).collect();
        let solution = solve_strong_sorted(&coarse, &order, ledger)?;
        let expected = match y_group {
            Some(gi) => coarse.payoff(order[gi]).unwrap(),
            // y == 0 with no zero-payoff terminal: infinite play must be
            // the coarse outcome at v0
            None => 0.0,
        };
        // a terminal v0 may have been merged away; check its representative
        let check_vertex = if game.is_terminal(v0) {
            mapping
                .iter()
                .find(|(_, group)| group.contains(&v0))
                .map(|(rep, _)| *rep)
                .unwrap_or(v0)
        } else {
            v0
        };
        (solution, expected, check_vertex)
    };
    debug_assert_eq!(ledger.count(), before);
    if solution.values[check_vertex] != expected {
        return Err(Error::InconsistentInputValue { vertex: v0 });
    }
    Ok(WeakSolution { v0, value: y, strategies: solution.strategies })
}

/// Recovers a strong solution from the full value map: arcs between vertices
/// of different values cannot be part of one, so the game splits into
/// single-value pieces that retrograde analysis solves without any payoff
/// order (each piece has one payoff, or none and value 0).
pub fn recover_strong(game: &Srg, values: &[f64]) -> Result<Solution> {
    recover_strong_instrumented(game, values, &ComparisonLedger::new())
}

/// As [`recover_strong`], with an instrument attached (zero comparisons,
/// arc touches from the per-part solves).
pub fn recover_strong_instrumented(
    game: &Srg,
    values: &[f64],
    scratch: &ComparisonLedger,
) -> Result<Solution> {
    for t in game.terminal_ids() {
        let claimed = values.get(t).copied().ok_or(Error::MissingValue(t))?;
        if claimed != game.payoff(t).unwrap() {
            return Err(Error::InconsistentInputValue { vertex: t });
        }
    }
    let parts = game.split_by_value_mapped(values)?;
    let mut strategies = StrategyPair::empty(game.slot_count());
    for (value, part, arc_map) in parts {
        // a correct value map leaves every non-terminal a same-value move
        let out = part.out_degrees();
        for v in part.vertex_ids() {
            if !part.is_terminal(v) && out[v] == 0 {
                return Err(Error::InconsistentInputValue { vertex: v });
            }
        }
        let mut order: Vec<VertexId> = part.terminal_ids().collect();
        order.sort_unstable(); // all payoffs equal; id order is the key order
        let sub = solve_strong_sorted(&part, &order, scratch)?;
        for v in part.vertex_ids() {
            if sub.values[v] != value {
                return Err(Error::InconsistentInputValue { vertex: v });
            }
            if let Some(e) = sub.strategies.max_choice[v] {
                strategies.max_choice[v] = Some(arc_map[e]);
            }
            if let Some(e) = sub.strategies.min_choice[v] {
                strategies.min_choice[v] = Some(arc_map[e]);
            }
        }
    }
    Ok(Solution { values: values.to_vec(), strategies })
}
