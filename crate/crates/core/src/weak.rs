//! Weak solvers: the value at one start vertex, almost without sorting.
//!
//! All three solvers interleave payoff coarsening with retrograde analysis:
//! partition the live terminals, solve the coarse game to find the group
//! holding `Val(v0)`, discard everything outside it, repeat. Binary
//! partitions give the O(n)-comparison solvers (with and without an early
//! sorting handoff); `2^(m/n_i)`-way partitions trade comparisons for an
//! almost-linear iteration count. A preprocessing pass reduces everything
//! to games where all values are positive.

use crate::error::{Error, Result};
use crate::game::{Sign, Srg, VertexId, WeakSolution};
use crate::ledger::{ComparisonLedger, Key};
use crate::order::{partial_perfect_quicksort, select_median};
use crate::recovery::recover_weak;
use crate::retrograde::{solve_signs, solve_strong_sorted, sorting_method};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeakAlgo {
    Paterson,
    LogLog,
    LogStar,
}

/// Sizes observed at the start of one coarsen/solve round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationStats {
    pub terminals: usize,
    pub arcs: usize,
}

/// Trace of one weak value computation.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakRun {
    pub value: f64,
    pub iterations: usize,
    pub trace: Vec<IterationStats>,
}

/// Full weak solve result: the value, a verified-recoverable strategy pair,
/// and the solver trace.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakOutcome {
    pub value: f64,
    pub solution: WeakSolution,
    pub run: WeakRun,
}

/// A game reduced to the all-positive-value case, or an immediate answer.
#[derive(Debug, Clone)]
pub enum Preprocessed {
    Answer(f64),
    Positive(PositiveGame),
}

/// All-positive-value reduction of a game. `negated` records a Min/Max flip
/// that must be undone on the final value.
#[derive(Debug, Clone)]
pub struct PositiveGame {
    pub game: Srg,
    pub v0: VertexId,
    pub negated: bool,
}

/// Reduces to a game where every vertex has a positive value: solve the
/// sign game; a zero sign at `v0` is already the answer, a negative sign
/// flips the game, and everything outside the positive part is discarded
/// (cross-sign arcs join different values, so cutting them changes
/// nothing).
pub fn preprocess_positive(game: &Srg, v0: VertexId) -> Result<Preprocessed> {
    if !game.is_live(v0) {
        return Err(Error::UnknownVertex(v0));
    }
    if let Some(p) = game.payoff(v0) {
        return Ok(Preprocessed::Answer(p));
    }
    let (signs, _) = solve_signs(game)?;
    let wanted = match signs[v0] {
        Sign::Zero => return Ok(Preprocessed::Answer(0.0)),
        Sign::Positive => Sign::Positive,
        Sign::Negative => Sign::Negative,
    };
    let keep: Vec<bool> = (0..game.slot_count())
        .map(|v| game.is_live(v) && signs[v] == wanted)
        .collect();
    let restricted = game.restrict(&keep);
    let (g, negated) = if wanted == Sign::Negative {
        (restricted.negate(), true)
    } else {
        (restricted, false)
    };
    Ok(Preprocessed::Positive(PositiveGame { game: g, v0, negated }))
}

fn ceil_log2(x: usize) -> u32 {
    debug_assert!(x >= 1);
    x.ilog2() + u32::from(!x.is_power_of_two())
}

fn terminal_keys(g: &Srg) -> Vec<Key> {
    g.terminal_ids().map(|t| Key::new(g.payoff(t).unwrap(), t)).collect()
}

/// One narrowing loop shared by the three solvers, with a hook observing
/// each survivor game (used by the test suites to re-oracle intermediate
/// states).
pub fn run_weak_observed(
    game: &Srg,
    v0: VertexId,
    algo: WeakAlgo,
    ledger: &ComparisonLedger,
    observe: &mut dyn FnMut(&Srg),
) -> Result<WeakRun> {
    if !game.is_live(v0) {
        return Err(Error::UnknownVertex(v0));
    }
    let n0 = game.num_terminals();
    let m0 = game.num_arcs();
    let mut g = game.clone();
    let mut iterations = 0usize;
    let mut trace = Vec::new();
    let value = loop {
        if let Some(p) = g.payoff(v0) {
            break p;
        }
        let keys = terminal_keys(&g);
        let n_i = keys.len();
        assert!(
            n_i >= 1,
            "an all-positive-value game keeps a terminal for the start vertex"
        );
        if n_i == 1 {
            break keys[0].value;
        }
        let handoff = match algo {
            WeakAlgo::Paterson => false,
            WeakAlgo::LogLog => n_i as u64 * ceil_log2(n_i) as u64 <= n0 as u64,
            WeakAlgo::LogStar => {
                let e = m0 / n_i;
                e >= 63 || (1u64 << e) >= n_i as u64
            }
        };
        if handoff {
            let sol = sorting_method(&g, ledger)?;
            break sol.values[v0];
        }
        iterations += 1;
        trace.push(IterationStats { terminals: n_i, arcs: g.num_arcs() });
        let groups: Vec<Vec<VertexId>> = match algo {
            WeakAlgo::Paterson | WeakAlgo::LogLog => {
                let (_, lower, upper) = select_median(&keys, ledger)?;
                vec![
                    lower.into_iter().map(|k| k.id).collect(),
                    upper.into_iter().map(|k| k.id).collect(),
                ]
            }
            WeakAlgo::LogStar => {
                let depth = (m0 as u64).div_ceil(n_i as u64) as u32 + 1;
                partial_perfect_quicksort(&keys, depth, ledger)?
                    .into_iter()
                    .map(|g| g.into_iter().map(|k| k.id).collect())
                    .collect()
            }
        };
        let (coarse, mapping) = g.coarsen(&groups)?;
        let order: Vec<VertexId> = mapping.iter().map(|(rep, _)| *rep).collect();
        let before = ledger.count();
        let csol = solve_strong_sorted(&coarse, &order, ledger)?;
        assert_eq!(ledger.count(), before, "coarse retrograde must be comparison-free");
        let rank = csol.values[v0];
        assert!(
            rank >= 1.0 && rank <= groups.len() as f64,
            "positive-value precondition violated: coarse value {rank} at start vertex"
        );
        let gi = rank as usize - 1;
        let mut keep = vec![false; g.slot_count()];
        for v in g.vertex_ids() {
            if !g.is_terminal(v) && csol.values[v] == rank {
                keep[v] = true;
            }
        }
        for &t in &groups[gi] {
            keep[t] = true;
        }
        g = g.restrict(&keep);
        observe(&g);
    };
    Ok(WeakRun { value, iterations, trace })
}

/// Binary halving all the way down to a single terminal: O(n) comparisons,
/// log n rounds of linear work.
pub fn solve_weak_paterson(
    game: &Srg,
    v0: VertexId,
    ledger: &ComparisonLedger,
) -> Result<WeakRun> {
    run_weak_observed(game, v0, WeakAlgo::Paterson, ledger, &mut |_| {})
}

/// Binary halving with an early exit: once sorting the survivors is linear
/// work, hand off to the sorting method. Still O(n) comparisons, only
/// log log n rounds.
pub fn solve_weak_loglog(game: &Srg, v0: VertexId, ledger: &ComparisonLedger) -> Result<WeakRun> {
    run_weak_observed(game, v0, WeakAlgo::LogLog, ledger, &mut |_| {})
}

/// `2^(m/n_i)`-way partitioning: group sizes collapse so fast that the
/// iteration count follows an iterated-logarithm recurrence. Spends more
/// comparisons to save rounds.
pub fn solve_weak_logstar(game: &Srg, v0: VertexId, ledger: &ComparisonLedger) -> Result<WeakRun> {
    run_weak_observed(game, v0, WeakAlgo::LogStar, ledger, &mut |_| {})
}

/// Full weak-solve pipeline: positivity preprocessing, the chosen value
/// solver, un-negation, and strategy recovery at `v0`.
pub fn solve_weak(
    game: &Srg,
    v0: VertexId,
    algo: WeakAlgo,
    ledger: &ComparisonLedger,
) -> Result<WeakOutcome> {
    let run = match preprocess_positive(game, v0)? {
        Preprocessed::Answer(value) => WeakRun { value, iterations: 0, trace: Vec::new() },
        Preprocessed::Positive(pg) => {
            let mut run = run_weak_observed(&pg.game, pg.v0, algo, ledger, &mut |_| {})?;
            if pg.negated {
                run.value = -run.value;
            }
            run
        }
    };
    let solution = recover_weak(game, v0, run.value)?;
    Ok(WeakOutcome { value: run.value, solution, run })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::VertexKind;
    use crate::oracle::verify_weak;

    fn mixed_game() -> Srg {
        // Max a -> {t1(-3), t2(7), b}; Min b -> {t1, a}
        Srg::new(
            vec![
                VertexKind::Max,
                VertexKind::Min,
                VertexKind::Terminal(-3.0),
                VertexKind::Terminal(7.0),
            ],
            vec![(0, 2), (0, 3), (0, 1), (1, 2), (1, 0)],
            Some(0),
        )
        .validate()
        .unwrap()
    }

    #[test]
    fn preprocess_answers_terminal_start() {
        let g = Srg::new(vec![VertexKind::Terminal(4.5)], vec![], Some(0)).validate().unwrap();
        match preprocess_positive(&g, 0).unwrap() {
            Preprocessed::Answer(v) => assert_eq!(v, 4.5),
            _ => panic!("expected an immediate answer"),
        }
    }

    #[test]
    fn preprocess_answers_cycle_game() {
        let g = Srg::new(
            vec![VertexKind::Max, VertexKind::Min],
            vec![(0, 1), (1, 0)],
            Some(0),
        )
        .validate()
        .unwrap();
        match preprocess_positive(&g, 0).unwrap() {
            Preprocessed::Answer(v) => assert_eq!(v, 0.0),
            _ => panic!("cycle games answer 0 outright"),
        }
    }

    #[test]
    fn preprocess_negates_negative_side() {
        let g = mixed_game();
        // Val(a) = 7 > 0: positive part survives un-negated
        match preprocess_positive(&g, 0).unwrap() {
            Preprocessed::Positive(pg) => {
                assert!(!pg.negated);
                assert!(pg.game.is_live(0));
                assert!(!pg.game.is_live(1), "negative-value vertex must go");
                assert!(!pg.game.is_live(2));
            }
            _ => panic!(),
        }
        // Val(b) = -3 < 0: the solver sees the mirror game
        match preprocess_positive(&g, 1).unwrap() {
            Preprocessed::Positive(pg) => {
                assert!(pg.negated);
                assert_eq!(pg.game.payoff(2), Some(3.0));
                assert_eq!(pg.game.kind(1), Some(VertexKind::Max));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn all_algos_agree_on_mixed_game() {
        let g = mixed_game();
        for algo in [WeakAlgo::Paterson, WeakAlgo::LogLog, WeakAlgo::LogStar] {
            let ledger = ComparisonLedger::new();
            let out = solve_weak(&g, 0, algo, &ledger).unwrap();
            assert_eq!(out.value, 7.0, "{algo:?}");
            assert!(verify_weak(&g, &out.solution).unwrap().passed());
            let ledger = ComparisonLedger::new();
            let out = solve_weak(&g, 1, algo, &ledger).unwrap();
            assert_eq!(out.value, -3.0, "{algo:?}");
            assert!(verify_weak(&g, &out.solution).unwrap().passed());
        }
    }

    #[test]
    fn single_terminal_game_needs_no_iterations() {
        let g = Srg::new(
            vec![VertexKind::Max, VertexKind::Terminal(2.0)],
            vec![(0, 1)],
            Some(0),
        )
        .validate()
        .unwrap();
        let ledger = ComparisonLedger::new();
        let run = solve_weak_paterson(&g, 0, &ledger).unwrap();
        assert_eq!(run.value, 2.0);
        assert_eq!(run.iterations, 0);
        assert_eq!(ledger.count(), 0);
    }

    #[test]
    fn staircase_discards_half_per_round() {
        // Max start chooses among 8 distinct positive payoffs: value is the
        // max, and each Paterson round discards the lower half
        let n = 8usize;
        let mut kinds = vec![VertexKind::Max];
        let mut arcs = Vec::new();
        for i in 0..n {
            kinds.push(VertexKind::Terminal((i + 1) as f64));
            arcs.push((0, i + 1));
        }
        let g = Srg::new(kinds, arcs, Some(0)).validate().unwrap();
        let ledger = ComparisonLedger::new();
        let run = solve_weak_paterson(&g, 0, &ledger).unwrap();
        assert_eq!(run.value, n as f64);
        assert_eq!(run.iterations, 3); // 8 -> 4 -> 2 -> 1
        let sizes: Vec<usize> = run.trace.iter().map(|s| s.terminals).collect();
        assert_eq!(sizes, vec![8, 4, 2]);
    }

    #[test]
    fn loglog_hands_off_small_games_immediately() {
        let g = mixed_game();
        match preprocess_positive(&g, 0).unwrap() {
            Preprocessed::Positive(pg) => {
                let ledger = ComparisonLedger::new();
                let run = solve_weak_loglog(&pg.game, pg.v0, &ledger).unwrap();
                assert_eq!(run.iterations, 0, "n <= 4 sorts right away");
                assert_eq!(run.value, 7.0);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn logstar_singleton_groups_when_arcs_dominate() {
        // m >= n log n: depth covers a full sort, one iteration
        let n = 4usize;
        let mut kinds = vec![VertexKind::Max];
        let mut arcs = Vec::new();
        for i in 0..n {
            kinds.push(VertexKind::Terminal((i + 1) as f64));
            for _ in 0..4 {
                arcs.push((0, i + 1)); // parallel arcs pad m
            }
        }
        let g = Srg::new(kinds, arcs, Some(0)).validate().unwrap();
        // m = 16 = n * log2(n) * 2 with n = 4: the stop rule fires at once
        let ledger = ComparisonLedger::new();
        let run = solve_weak_logstar(&g, 0, &ledger).unwrap();
        assert_eq!(run.value, 4.0);
        assert!(run.iterations <= 1);
    }

    #[test]
    fn observer_sees_shrinking_games() {
        let g = mixed_game();
        if let Preprocessed::Positive(pg) = preprocess_positive(&g, 0).unwrap() {
            let ledger = ComparisonLedger::new();
            let mut sizes = Vec::new();
            run_weak_observed(&pg.game, pg.v0, WeakAlgo::Paterson, &ledger, &mut |g| {
                sizes.push(g.num_vertices());
            })
            .unwrap();
            for w in sizes.windows(2) {
                assert!(w[1] <= w[0]);
            }
        }
    }
}
