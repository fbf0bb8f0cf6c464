//! Generalized retrograde analysis.
//!
//! Given the terminals in payoff order, a strong solution falls out of a
//! single backward pass with no further payoff comparisons: repeatedly take
//! the most extreme unprocessed terminal and resolve everything that is
//! forced into it. [`sorting_method`] prepends a charged comparison sort,
//! [`solve_signs`] runs the same pass on the three-terminal sign game.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::game::{Player, Sign, Solution, Srg, StrategyPair, VertexId};
use crate::ledger::{ComparisonLedger, Key};
use crate::order::sort_keys;

/// Declared linear-pass budget: a retrograde solve performs at most
/// `ARC_TOUCH_FACTOR * (m + n)` arc touches (see
/// [`ComparisonLedger::arc_touches`]).
pub const ARC_TOUCH_FACTOR: u64 = 10;

/// Strong solution from a presorted terminal order, in linear time and zero
/// charged comparisons (only payoff sign tests are used).
///
/// `order` must list every terminal exactly once, ascending under the
/// canonical (payoff, id) key; this is the caller's contract and is checked
/// in debug builds. For each extreme terminal `t` the pass drains a FIFO
/// worklist of arcs entering `t`: an arc from a vertex that would rather
/// avoid `t` and still has another move is deleted, every other arc fixes
/// its tail's value and choice and merges the tail into `t` (its remaining
/// in-arcs join the worklist). Whatever survives both cursors has value 0
/// and any surviving arc is an optimal choice.
pub fn solve_strong_sorted(
    game: &Srg,
    order: &[VertexId],
    ledger: &ComparisonLedger,
) -> Result<Solution> {
    let slots = game.slot_count();
    let mut seen = vec![false; slots];
    for &t in order {
        if game.payoff(t).is_none() || seen[t] {
            return Err(Error::BadPermutation);
        }
        seen[t] = true;
    }
    if order.len() != game.num_terminals() {
        return Err(Error::BadPermutation);
    }
    debug_assert!(
        order.windows(2).all(|w| {
            Key::new(game.payoff(w[0]).unwrap(), w[0])
                .raw_cmp(&Key::new(game.payoff(w[1]).unwrap(), w[1]))
                .is_lt()
        }),
        "terminal order must be sorted ascending"
    );

    let arcs = game.arcs();
    // flat adjacency: arc ids grouped by tail (out) and by head (in)
    let mut out_deg = vec![0usize; slots];
    let mut in_start = vec![0usize; slots + 1];
    for a in arcs {
        out_deg[a.tail] += 1;
        in_start[a.head + 1] += 1;
        ledger.touch_arc();
    }
    let mut out_start = vec![0usize; slots + 1];
    for v in 0..slots {
        out_start[v + 1] = out_start[v] + out_deg[v];
        in_start[v + 1] += in_start[v];
    }
    let mut out_list = vec![0usize; arcs.len()];
    let mut in_list = vec![0usize; arcs.len()];
    let mut out_fill = out_start.clone();
    let mut in_fill = in_start.clone();
    for (i, a) in arcs.iter().enumerate() {
        out_list[out_fill[a.tail]] = i;
        out_fill[a.tail] += 1;
        in_list[in_fill[a.head]] = i;
        in_fill[a.head] += 1;
    }
    let in_arcs = |v: VertexId| &in_list[in_start[v]..in_start[v + 1]];
    let out_arcs = |v: VertexId| &out_list[out_start[v]..out_start[v + 1]];

    let mut alive = vec![true; arcs.len()];
    let mut resolved = vec![false; slots];
    let mut values = vec![0.0f64; slots];
    let mut strategies = StrategyPair::empty(slots);
    let mut worklist: VecDeque<usize> = VecDeque::new();

    let mut lo = 0usize;
    let mut hi = order.len();
    loop {
        // pick a cursor: most negative first, else most positive
        let (t, avoider) = if lo < hi && game.payoff(order[lo]).unwrap() < 0.0 {
            lo += 1;
            (order[lo - 1], Player::Max)
        } else if lo < hi && game.payoff(order[hi - 1]).unwrap() > 0.0 {
            hi -= 1;
            (order[hi], Player::Min)
        } else {
            break;
        };
        let payoff = game.payoff(t).unwrap();
        values[t] = payoff;
        resolved[t] = true;
        debug_assert!(worklist.is_empty());
        for &e in in_arcs(t) {
            worklist.push_back(e);
            ledger.touch_arc();
        }
        while let Some(e) = worklist.pop_front() {
            ledger.touch_arc();
            if !alive[e] {
                continue;
            }
            let u = arcs[e].tail;
            let owner = game.player(u).expect("arc tails are non-terminals");
            if owner == avoider && out_deg[u] >= 2 {
                // never forced to the extreme while another move exists
                alive[e] = false;
                out_deg[u] -= 1;
                continue;
            }
            // optimal choice for u: take (or suffer) the extreme payoff
            values[u] = payoff;
            resolved[u] = true;
            match owner {
                Player::Max => strategies.max_choice[u] = Some(e),
                Player::Min => strategies.min_choice[u] = Some(e),
            }
            for &f in out_arcs(u) {
                if alive[f] {
                    alive[f] = false;
                    ledger.touch_arc();
                }
            }
            out_deg[u] = 0;
            // u's in-arcs now effectively enter t; each list is drained
            // at most once because u resolves at most once
            for &f in in_arcs(u) {
                worklist.push_back(f);
                ledger.touch_arc();
            }
        }
    }

    // all-zero residue: remaining payoffs are 0 and every strategy that
    // stays inside it is optimal
    for &t in &order[lo..hi] {
        values[t] = 0.0;
        resolved[t] = true;
    }
    for v in game.vertex_ids() {
        if resolved[v] || game.is_terminal(v) {
            continue;
        }
        values[v] = 0.0;
        let mut choice = None;
        for &f in out_arcs(v) {
            ledger.touch_arc();
            if alive[f] {
                choice = Some(f);
                break;
            }
        }
        let arc = choice.ok_or(Error::NonTerminalWithoutMoves(v))?;
        match game.player(v).unwrap() {
            Player::Max => strategies.max_choice[v] = Some(arc),
            Player::Min => strategies.min_choice[v] = Some(arc),
        }
    }
    Ok(Solution { values, strategies })
}

/// Sorted ascending terminal order under the canonical key, charged to the
/// ledger.
pub fn sorted_terminal_order(game: &Srg, ledger: &ComparisonLedger) -> Vec<VertexId> {
    let keys: Vec<Key> = game
        .terminal_ids()
        .map(|t| Key::new(game.payoff(t).unwrap(), t))
        .collect();
    sort_keys(&keys, ledger).into_iter().map(|k| k.id).collect()
}

/// Strong solve by sorting the payoffs first. The sort is the only source
/// of charged comparisons.
pub fn sorting_method(game: &Srg, ledger: &ComparisonLedger) -> Result<Solution> {
    let order = sorted_terminal_order(game, ledger);
    solve_strong_sorted(game, &order, ledger)
}

/// Signs of all values in linear time and zero charged comparisons: merge
/// all negative terminals into one, likewise the positive ones, and solve
/// the resulting win/lose/draw game. The returned strategies are optimal for
/// the sign-coarsened game (and read back as arcs of the input game).
pub fn solve_signs(game: &Srg) -> Result<(Vec<Sign>, StrategyPair)> {
    let mut negatives = Vec::new();
    let mut zeros = Vec::new();
    let mut positives = Vec::new();
    for t in game.terminal_ids() {
        match Sign::of(game.payoff(t).unwrap()) {
            Sign::Negative => negatives.push(t),
            Sign::Zero => zeros.push(t),
            Sign::Positive => positives.push(t),
        }
    }
    let mut groups = Vec::new();
    for g in [negatives, zeros, positives] {
        if !g.is_empty() {
            groups.push(g);
        }
    }
    let scratch = ComparisonLedger::new();
    let solution = if groups.is_empty() {
        solve_strong_sorted(game, &[], &scratch)?
    } else {
        let (coarse, mapping) = game.coarsen(&groups)?;
        let order: Vec<VertexId> = mapping.iter().map(|(rep, _)| *rep).collect();
        solve_strong_sorted(&coarse, &order, &scratch)?
    };
    debug_assert_eq!(scratch.count(), 0);
    let mut signs = vec![Sign::Zero; game.slot_count()];
    for v in game.vertex_ids() {
        signs[v] = match game.payoff(v) {
            Some(p) => Sign::of(p),
            None => Sign::of(solution.values[v]),
        };
    }
    Ok((signs, solution.strategies))
}
