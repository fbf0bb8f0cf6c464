//! Widest-path interdiction.
//!
//! A capacitated digraph with per-vertex removal budgets: from each vertex
//! `v` at most `k(v)` outgoing arcs may be removed, and the interdictor
//! wants to destroy wide paths to the destination. `Width(v)` is the minimax
//! width achievable from `v`; `Width(t)` is infinite and vertices whose
//! every path can be destroyed get width 0.
//!
//! With arcs presorted by capacity the strong problem is solved in one
//! linear backward pass over a monotone bucket queue of capacity ranks
//! ([`solve_strong_sorted_capacities`]). The weak solvers coarsen the
//! capacity set instead of sorting it, narrowing in on the group containing
//! `Width(s)`.

use crate::error::{Error, Result};
use crate::game::{Player, Srg, VertexId};
use crate::ledger::{ComparisonLedger, Key};
use crate::order::{partial_perfect_quicksort, select_median, sort_keys};

pub type ArcId = usize;

/// Declared linear-pass budget of the strong rank solver: at most
/// `ARC_TOUCH_FACTOR * (m + n)` arc touches per solve.
pub const ARC_TOUCH_FACTOR: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetArc {
    pub tail: VertexId,
    pub head: VertexId,
    pub capacity: f64,
}

/// Capacitated network with removal budgets, a source, and a destination.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    vertex_count: usize,
    arcs: Vec<NetArc>,
    budgets: Vec<u32>,
    source: VertexId,
    sink: VertexId,
}

impl Network {
    pub fn new(
        vertex_count: usize,
        arcs: Vec<(VertexId, VertexId, f64)>,
        budgets: Vec<u32>,
        source: VertexId,
        sink: VertexId,
    ) -> Network {
        Network {
            vertex_count,
            arcs: arcs
                .into_iter()
                .map(|(tail, head, capacity)| NetArc { tail, head, capacity })
                .collect(),
            budgets,
            source,
            sink,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arcs(&self) -> &[NetArc] {
        &self.arcs
    }

    pub fn budget(&self, v: VertexId) -> u32 {
        self.budgets.get(v).copied().unwrap_or(0)
    }

    pub fn budgets(&self) -> &[u32] {
        &self.budgets
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    /// Arc count below vertex count; legal, but outside the density the
    /// complexity bounds are quoted for.
    pub fn below_density_assumption(&self) -> bool {
        self.arcs.len() < self.vertex_count
    }

    /// Checks ids, capacities, and budget coverage; drops self-loops and
    /// arcs leaving the sink (neither can matter to any path reaching it).
    pub fn validate(&self) -> Result<Network> {
        if self.source >= self.vertex_count {
            return Err(Error::UnknownVertex(self.source));
        }
        if self.sink >= self.vertex_count {
            return Err(Error::UnknownVertex(self.sink));
        }
        if self.budgets.len() != self.vertex_count {
            return Err(Error::MissingValue(self.budgets.len()));
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if a.tail >= self.vertex_count || a.head >= self.vertex_count {
                return Err(Error::DanglingArc { tail: a.tail, head: a.head });
            }
            if !(a.capacity.is_finite() && a.capacity > 0.0) {
                return Err(Error::InvalidCapacity(i));
            }
        }
        let mut net = self.clone();
        net.arcs.retain(|a| a.tail != a.head && a.tail != net.sink);
        Ok(net)
    }
}

/// Result of a strong interdiction solve: the minimax width per vertex, the
/// single removal set witnessing all of them, and how much budget each
/// vertex spent.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthSolution {
    pub width: Vec<f64>,
    pub removed: Vec<ArcId>,
    pub removal_counts: Vec<u32>,
}

/// Result of a weak interdiction solve: `Width(source)`, a removal set
/// achieving it, and the coarsening trace.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthRun {
    pub width_at_source: f64,
    pub removed: Vec<ArcId>,
    pub iterations: usize,
    pub live_capacity_trace: Vec<usize>,
}

const RANK_INFINITE: usize = usize::MAX;

struct RankSolve {
    width_rank: Vec<usize>,
    removed: Vec<ArcId>,
    removal_counts: Vec<u32>,
}

/// Backward pass over a monotone bucket queue of integer capacity ranks.
/// Rank 0 is the "destroyed" sentinel; `max_rank` bounds the queue. Ties
/// share a bucket and are served FIFO. No capacity values are inspected, so
/// the ledger is never charged.
fn solve_by_ranks(
    net: &Network,
    rank: &[usize],
    max_rank: usize,
    ledger: &ComparisonLedger,
) -> RankSolve {
    let n = net.vertex_count();
    let arcs = net.arcs();
    // flat in-adjacency: arc ids grouped by head
    let mut in_start = vec![0usize; n + 1];
    for a in arcs {
        in_start[a.head + 1] += 1;
        ledger.touch_arc();
    }
    for v in 0..n {
        in_start[v + 1] += in_start[v];
    }
    let mut in_list = vec![0usize; arcs.len()];
    let mut in_fill = in_start.clone();
    for (i, a) in arcs.iter().enumerate() {
        in_list[in_fill[a.head]] = i;
        in_fill[a.head] += 1;
    }
    let in_arcs = |v: VertexId| &in_list[in_start[v]..in_start[v + 1]];
    let mut buckets: Vec<Vec<ArcId>> = vec![Vec::new(); max_rank + 1];
    let mut bucket_next: Vec<usize> = vec![0; max_rank + 1]; // FIFO read cursor
    let mut merged = vec![false; n];
    let mut width_rank = vec![0usize; n];
    let mut budget_left = net.budgets.to_vec();
    let mut removed = Vec::new();
    let mut removal_counts = vec![0u32; n];
    merged[net.sink] = true;
    width_rank[net.sink] = RANK_INFINITE;
    for &e in in_arcs(net.sink) {
        // rank 0 marks a capacity frozen to the 0 sentinel: such an arc can
        // neither widen a path nor be worth a removal, so it never queues
        if rank[e] == 0 {
            continue;
        }
        debug_assert!(rank[e] <= max_rank);
        buckets[rank[e]].push(e);
        ledger.touch_arc();
    }
    let mut cursor = max_rank;
    loop {
        // find the highest non-empty bucket at or below the cursor
        while cursor > 0 && bucket_next[cursor] >= buckets[cursor].len() {
            cursor -= 1;
            ledger.touch_arc();
        }
        if cursor == 0 {
            break;
        }
        let e = buckets[cursor][bucket_next[cursor]];
        bucket_next[cursor] += 1;
        ledger.touch_arc();
        let v = arcs[e].tail;
        if merged[v] {
            // structural casualty: v's outgoing arcs died when v merged
            continue;
        }
        if budget_left[v] > 0 {
            budget_left[v] -= 1;
            removal_counts[v] += 1;
            removed.push(e);
            continue;
        }
        // out of budget: v's width is fixed at the extracted rank; clamp its
        // incoming arcs to that rank and fold v into the sink blob
        width_rank[v] = cursor;
        merged[v] = true;
        for &f in in_arcs(v) {
            if merged[arcs[f].tail] || rank[f] == 0 {
                continue;
            }
            let r = rank[f].min(cursor);
            assert!(
                r <= cursor,
                "monotone bucket queue: insertion above extraction rank"
            );
            buckets[r].push(f);
            ledger.touch_arc();
        }
    }
    RankSolve { width_rank, removed, removal_counts }
}

/// Strong solve given a permutation sorting the arcs by capacity (ascending
/// under the canonical (capacity, arc id) key). Capacities are replaced by
/// their ranks 1..=m before solving, so the pass performs zero charged
/// comparisons. `Width(sink)` is infinite, including when source == sink.
pub fn solve_strong_sorted_capacities(
    net: &Network,
    order: &[ArcId],
    ledger: &ComparisonLedger,
) -> Result<WidthSolution> {
    let m = net.arcs.len();
    if order.len() != m {
        return Err(Error::BadPermutation);
    }
    let mut rank = vec![0usize; m];
    for (pos, &a) in order.iter().enumerate() {
        if a >= m || rank[a] != 0 {
            return Err(Error::BadPermutation);
        }
        rank[a] = pos + 1;
    }
    debug_assert!(
        order.windows(2).all(|w| {
            Key::new(net.arcs[w[0]].capacity, w[0])
                .raw_cmp(&Key::new(net.arcs[w[1]].capacity, w[1]))
                .is_lt()
        }),
        "arc order must be sorted ascending by capacity"
    );
    let rs = solve_by_ranks(net, &rank, m, ledger);
    let width = rs
        .width_rank
        .iter()
        .map(|&r| match r {
            0 => 0.0,
            RANK_INFINITE => f64::INFINITY,
            r => net.arcs[order[r - 1]].capacity,
        })
        .collect();
    Ok(WidthSolution { width, removed: rs.removed, removal_counts: rs.removal_counts })
}

/// Sorted ascending arc order under the canonical key, charged to the
/// ledger.
pub fn sorted_capacity_order(net: &Network, ledger: &ComparisonLedger) -> Vec<ArcId> {
    let keys: Vec<Key> = net
        .arcs
        .iter()
        .enumerate()
        .map(|(i, a)| Key::new(a.capacity, i))
        .collect();
    sort_keys(&keys, ledger).into_iter().map(|k| k.id).collect()
}

#[derive(Clone, Copy, PartialEq)]
enum Freeze {
    Live,
    Low,
    High,
}

/// Weak solvers share this narrowing loop; `halving` picks binary
/// partitions (the log log variant) instead of `2^(m/|C|)`-way ones (the
/// log* variant).
fn solve_weak_capacities(
    net: &Network,
    halving: bool,
    ledger: &ComparisonLedger,
) -> Result<WidthRun> {
    let m = net.arcs.len();
    let mut trace = Vec::new();
    let mut iterations = 0usize;
    if net.source == net.sink {
        return Ok(WidthRun {
            width_at_source: f64::INFINITY,
            removed: Vec::new(),
            iterations,
            live_capacity_trace: trace,
        });
    }
    let mut freeze = vec![Freeze::Live; m];
    let mut live: Vec<Key> = net
        .arcs
        .iter()
        .enumerate()
        .map(|(i, a)| Key::new(a.capacity, i))
        .collect();
    loop {
        let c = live.len();
        let stop = if c <= 1 {
            true
        } else if halving {
            c as u64 * (c.ilog2() as u64 + u64::from(!c.is_power_of_two())) <= m as u64
        } else {
            let e = m / c;
            e >= 63 || (1u64 << e) >= c as u64
        };
        if stop {
            break;
        }
        iterations += 1;
        trace.push(c);
        let groups: Vec<Vec<Key>> = if halving {
            let (_, lower, upper) = select_median(&live, ledger)?;
            vec![lower, upper]
        } else {
            let depth = (m as u32).div_ceil(c as u32) + 1;
            partial_perfect_quicksort(&live, depth, ledger)?
        };
        // ranks: frozen-low 0, live groups 1..=g, frozen-high g+1
        let g = groups.len();
        let mut rank = vec![0usize; m];
        for (gi, group) in groups.iter().enumerate() {
            for k in group {
                rank[k.id] = gi + 1;
            }
        }
        for (i, f) in freeze.iter().enumerate() {
            if *f == Freeze::High {
                rank[i] = g + 1;
            }
        }
        let rs = solve_by_ranks(net, &rank, g + 1, ledger);
        let r = rs.width_rank[net.source];
        if r == 0 {
            // every path from the source can be destroyed; the coarse
            // removal set already witnesses that
            return Ok(WidthRun {
                width_at_source: 0.0,
                removed: rs.removed,
                iterations,
                live_capacity_trace: trace,
            });
        }
        assert!(
            r >= 1 && r <= g,
            "width at source must fall in a live capacity group"
        );
        for (gi, group) in groups.into_iter().enumerate() {
            if gi + 1 < r {
                for k in group {
                    freeze[k.id] = Freeze::Low;
                }
            } else if gi + 1 == r {
                live = group;
            } else {
                for k in group {
                    freeze[k.id] = Freeze::High;
                }
            }
        }
    }
    // exact finish: fully sort the surviving capacities and solve once more
    let sorted = sort_keys(&live, ledger);
    let c = sorted.len();
    let mut rank = vec![0usize; m];
    for (pos, k) in sorted.iter().enumerate() {
        rank[k.id] = pos + 1;
    }
    for (i, f) in freeze.iter().enumerate() {
        if *f == Freeze::High {
            rank[i] = c + 1;
        }
    }
    let rs = solve_by_ranks(net, &rank, c + 1, ledger);
    let r = rs.width_rank[net.source];
    let width_at_source = match r {
        0 => 0.0,
        RANK_INFINITE => f64::INFINITY,
        r => {
            assert!(r <= c, "width at source must be a surviving capacity");
            sorted[r - 1].value
        }
    };
    Ok(WidthRun {
        width_at_source,
        removed: rs.removed,
        iterations,
        live_capacity_trace: trace,
    })
}

/// Weak solve by repeated `2^(m/|C|)`-way capacity coarsening.
pub fn solve_weak_logstar_capacities(
    net: &Network,
    ledger: &ComparisonLedger,
) -> Result<WidthRun> {
    solve_weak_capacities(net, false, ledger)
}

/// Weak solve by repeated binary capacity coarsening; O(m) comparisons.
pub fn solve_weak_loglog_capacities(
    net: &Network,
    ledger: &ComparisonLedger,
) -> Result<WidthRun> {
    solve_weak_capacities(net, true, ledger)
}

/// Reduces an all-positive-payoff game to widest-path interdiction: a
/// supersink picks up one arc per terminal carrying the payoff, every
/// original arc gets a capacity above all payoffs, and Min vertices may
/// remove all but one outgoing arc. Width in the network equals Val in the
/// game on every mapped vertex.
///
/// Returns the network plus the game-slot-to-network-vertex map (the
/// supersink is the extra vertex `network.sink()`).
pub fn reduce_srg_to_interdiction(game: &Srg) -> Result<(Network, Vec<Option<VertexId>>)> {
    let mut max_payoff = 0.0f64;
    for t in game.terminal_ids() {
        let p = game.payoff(t).unwrap();
        if p <= 0.0 {
            return Err(Error::NonPositivePayoff(t));
        }
        max_payoff = max_payoff.max(p);
    }
    let mut map: Vec<Option<VertexId>> = vec![None; game.slot_count()];
    let mut count = 0usize;
    for v in game.vertex_ids() {
        map[v] = Some(count);
        count += 1;
    }
    let supersink = count;
    let huge = max_payoff + 1.0;
    let mut arcs: Vec<(VertexId, VertexId, f64)> = game
        .arcs()
        .iter()
        .map(|a| (map[a.tail].unwrap(), map[a.head].unwrap(), huge))
        .collect();
    for t in game.terminal_ids() {
        arcs.push((map[t].unwrap(), supersink, game.payoff(t).unwrap()));
    }
    let out_deg = game.out_degrees();
    let mut budgets = vec![0u32; count + 1];
    for v in game.vertex_ids() {
        if game.player(v) == Some(Player::Min) {
            budgets[map[v].unwrap()] = out_deg[v] as u32 - 1;
        }
    }
    let source = game
        .start()
        .or_else(|| game.vertex_ids().next())
        .map(|v| map[v].unwrap())
        .unwrap_or(supersink);
    let net = Network::new(count + 1, arcs, budgets, source, supersink).validate()?;
    Ok((net, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::VertexKind;
    use crate::oracle::{bottleneck_widths, enumerate_widths};

    fn strong(net: &Network) -> WidthSolution {
        let ledger = ComparisonLedger::new();
        let order = sorted_capacity_order(net, &ledger);
        solve_strong_sorted_capacities(net, &order, &ledger).unwrap()
    }

    #[test]
    fn no_budget_single_arc() {
        let net = Network::new(2, vec![(0, 1, 5.0)], vec![0, 0], 0, 1).validate().unwrap();
        let sol = strong(&net);
        assert_eq!(sol.width[0], 5.0);
        assert!(sol.removed.is_empty());
    }

    #[test]
    fn budget_removes_widest_parallel_arc() {
        let net = Network::new(2, vec![(0, 1, 5.0), (0, 1, 3.0)], vec![1, 0], 0, 1)
            .validate()
            .unwrap();
        let sol = strong(&net);
        assert_eq!(sol.removed, vec![0]);
        assert_eq!(sol.width[0], 3.0);
        assert_eq!(sol.removal_counts[0], 1);
    }

    #[test]
    fn midpath_budget_prunes_wide_branch() {
        // s -> a (10), a -> t (4), a -> t (6), budget 1 at a
        let net = Network::new(
            3,
            vec![(0, 1, 10.0), (1, 2, 4.0), (1, 2, 6.0)],
            vec![0, 1, 0],
            0,
            2,
        )
        .validate()
        .unwrap();
        let sol = strong(&net);
        assert_eq!(sol.removed, vec![2]); // the capacity-6 arc
        assert_eq!(sol.width[1], 4.0);
        assert_eq!(sol.width[0], 4.0);
        let w = enumerate_widths(&net).unwrap();
        assert_eq!(&sol.width[..], &w[..]);
    }

    #[test]
    fn zero_comparisons_and_valid_certificate() {
        let net = Network::new(
            4,
            vec![(0, 1, 3.0), (1, 3, 8.0), (0, 2, 7.0), (2, 3, 6.0), (0, 3, 1.0)],
            vec![1, 0, 1, 0],
            0,
            3,
        )
        .validate()
        .unwrap();
        let ledger = ComparisonLedger::new();
        let order = sorted_capacity_order(&net, &ledger);
        let sorted_cost = ledger.count();
        let sol = solve_strong_sorted_capacities(&net, &order, &ledger).unwrap();
        assert_eq!(ledger.count(), sorted_cost, "solve must not compare capacities");
        // certificate: recomputing bottleneck widths without the removed
        // arcs reproduces the claimed widths
        let mut removed = vec![false; net.arcs().len()];
        for &e in &sol.removed {
            removed[e] = true;
        }
        let w = bottleneck_widths(&net, &removed);
        assert_eq!(w, sol.width);
        for v in 0..net.vertex_count() {
            assert!(sol.removal_counts[v] <= net.budget(v));
        }
    }

    #[test]
    fn source_equals_sink_is_infinite() {
        let net = Network::new(2, vec![(0, 1, 2.0)], vec![0, 0], 1, 1).validate().unwrap();
        let sol = strong(&net);
        assert!(sol.width[1].is_infinite());
        let ledger = ComparisonLedger::new();
        let run = solve_weak_loglog_capacities(&net, &ledger).unwrap();
        assert!(run.width_at_source.is_infinite());
    }

    #[test]
    fn weak_solvers_match_strong_on_small_nets() {
        let nets = [
            Network::new(2, vec![(0, 1, 5.0), (0, 1, 3.0)], vec![1, 0], 0, 1),
            Network::new(
                3,
                vec![(0, 1, 10.0), (1, 2, 4.0), (1, 2, 6.0)],
                vec![0, 1, 0],
                0,
                2,
            ),
            Network::new(2, vec![(0, 1, 5.0)], vec![1, 0], 0, 1),
            Network::new(
                4,
                vec![
                    (0, 1, 3.0),
                    (1, 3, 8.0),
                    (0, 2, 7.0),
                    (2, 3, 6.0),
                    (0, 3, 1.0),
                    (1, 0, 2.5),
                ],
                vec![1, 1, 0, 0],
                0,
                3,
            ),
        ];
        for net in nets {
            let net = net.validate().unwrap();
            let sol = strong(&net);
            for halving in [false, true] {
                let ledger = ComparisonLedger::new();
                let run = solve_weak_capacities(&net, halving, &ledger).unwrap();
                assert_eq!(
                    run.width_at_source, sol.width[net.source()],
                    "weak/strong mismatch (halving={halving})"
                );
                // the weak removal certificate achieves the width at s
                let mut removed = vec![false; net.arcs().len()];
                for &e in &run.removed {
                    removed[e] = true;
                }
                let w = bottleneck_widths(&net, &removed);
                assert_eq!(w[net.source()], run.width_at_source);
            }
        }
    }

    #[test]
    fn destroyable_source_reports_zero() {
        let net = Network::new(2, vec![(0, 1, 5.0)], vec![1, 0], 0, 1).validate().unwrap();
        let sol = strong(&net);
        assert_eq!(sol.width[0], 0.0);
        let ledger = ComparisonLedger::new();
        let run = solve_weak_logstar_capacities(&net, &ledger).unwrap();
        assert_eq!(run.width_at_source, 0.0);
    }

    #[test]
    fn reduction_realizes_min_choice() {
        // Min m -> {t1(2), t2(5)}: interdictor keeps only the narrow branch
        let g = Srg::new(
            vec![VertexKind::Min, VertexKind::Terminal(2.0), VertexKind::Terminal(5.0)],
            vec![(0, 1), (0, 2)],
            Some(0),
        )
        .validate()
        .unwrap();
        let (net, map) = reduce_srg_to_interdiction(&g).unwrap();
        assert_eq!(net.budget(map[0].unwrap()), 1);
        let sol = strong(&net);
        assert_eq!(sol.width[map[0].unwrap()], 2.0);
    }

    #[test]
    fn reduction_rejects_non_positive_payoffs() {
        let g = Srg::new(
            vec![VertexKind::Max, VertexKind::Terminal(-1.0)],
            vec![(0, 1)],
            Some(0),
        )
        .validate()
        .unwrap();
        assert!(matches!(
            reduce_srg_to_interdiction(&g),
            Err(Error::NonPositivePayoff(_))
        ));
    }

    #[test]
    fn forced_max_vertex_keeps_payoff() {
        let g = Srg::new(
            vec![VertexKind::Max, VertexKind::Terminal(7.0)],
            vec![(0, 1)],
            Some(0),
        )
        .validate()
        .unwrap();
        let (net, map) = reduce_srg_to_interdiction(&g).unwrap();
        assert_eq!(net.budget(map[0].unwrap()), 0);
        let sol = strong(&net);
        assert_eq!(sol.width[map[0].unwrap()], 7.0);
    }
}
