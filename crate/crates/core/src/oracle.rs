//! Brute-force ground truth for small instances.
//!
//! Everything here is deliberately independent of the solver modules: values
//! come from enumerating positional strategy profiles, widths from
//! enumerating removal sets, and both are used to anchor the fast algorithms
//! at desk scale. Enumeration caps are hard errors, never silent truncation.

use crate::error::{Error, Result};
use crate::game::{Player, Solution, Srg, StrategyPair, VertexId, WeakSolution};
use crate::interdiction::Network;

/// Default cap on the number of enumerated strategy profiles / removal sets.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// Plays the game from `start` under one fixed strategy per player. Returns
/// the payoff of the terminal reached, or 0 on the first vertex revisit
/// (positional strategies make the first revisit conclusive).
pub fn play_out(
    game: &Srg,
    max_strategy: &[Option<usize>],
    min_strategy: &[Option<usize>],
    start: VertexId,
) -> Result<f64> {
    if !game.is_live(start) {
        return Err(Error::UnknownVertex(start));
    }
    let mut visited = vec![false; game.slot_count()];
    let mut v = start;
    loop {
        if let Some(p) = game.payoff(v) {
            return Ok(p);
        }
        if visited[v] {
            return Ok(0.0);
        }
        visited[v] = true;
        let arc = match game.player(v).unwrap() {
            Player::Max => max_strategy.get(v).copied().flatten(),
            Player::Min => min_strategy.get(v).copied().flatten(),
        }
        .ok_or(Error::IncompleteStrategy { vertex: v })?;
        let a = *game.arcs().get(arc).ok_or(Error::IncompleteStrategy { vertex: v })?;
        if a.tail != v {
            return Err(Error::IncompleteStrategy { vertex: v });
        }
        v = a.head;
    }
}

/// Values of every vertex under one combined choice function (one outgoing
/// arc per non-terminal). Follows the functional graph with memoization:
/// cycles pay 0, and everything feeding a cycle pays 0 with them.
fn profile_values(game: &Srg, choice: &[Option<usize>]) -> Vec<f64> {
    const UNSEEN: u8 = 0;
    const ON_PATH: u8 = 1;
    const DONE: u8 = 2;
    let slots = game.slot_count();
    let mut state = vec![UNSEEN; slots];
    let mut value = vec![0.0f64; slots];
    let mut path: Vec<VertexId> = Vec::new();
    for v0 in game.vertex_ids() {
        if state[v0] == DONE {
            continue;
        }
        path.clear();
        let mut v = v0;
        let outcome = loop {
            if let Some(p) = game.payoff(v) {
                value[v] = p;
                state[v] = DONE;
                break p;
            }
            match state[v] {
                DONE => break value[v],
                ON_PATH => break 0.0, // closed a cycle: everything on it pays 0
                _ => {}
            }
            state[v] = ON_PATH;
            path.push(v);
            v = game.arcs()[choice[v].expect("complete profile")].head;
        };
        for &u in &path {
            value[u] = outcome;
            state[u] = DONE;
        }
    }
    value
}

/// All positional strategies of one player, as slot-indexed arc choices.
struct StrategyEnum {
    vertices: Vec<VertexId>,
    options: Vec<Vec<usize>>,
    counter: Vec<usize>,
    slots: usize,
    exhausted: bool,
}

impl StrategyEnum {
    fn new(game: &Srg, player: Player) -> StrategyEnum {
        let out = game.out_arcs();
        let vertices: Vec<VertexId> =
            game.vertex_ids().filter(|&v| game.player(v) == Some(player)).collect();
        let options: Vec<Vec<usize>> = vertices.iter().map(|&v| out[v].clone()).collect();
        let exhausted = options.iter().any(|o| o.is_empty());
        StrategyEnum {
            counter: vec![0; vertices.len()],
            vertices,
            options,
            slots: game.slot_count(),
            exhausted,
        }
    }

    fn profile_count(&self) -> u128 {
        self.options.iter().map(|o| o.len() as u128).product()
    }

    fn current(&self) -> Vec<Option<usize>> {
        let mut s = vec![None; self.slots];
        for (i, &v) in self.vertices.iter().enumerate() {
            s[v] = Some(self.options[i][self.counter[i]]);
        }
        s
    }

    fn advance(&mut self) -> bool {
        for i in 0..self.counter.len() {
            self.counter[i] += 1;
            if self.counter[i] < self.options[i].len() {
                return true;
            }
            self.counter[i] = 0;
        }
        false
    }

    fn all(mut self) -> Vec<Vec<Option<usize>>> {
        if self.exhausted {
            return Vec::new();
        }
        let mut out = Vec::new();
        loop {
            out.push(self.current());
            if !self.advance() {
                return out;
            }
        }
    }
}

fn merge_profiles(a: &[Option<usize>], b: &[Option<usize>]) -> Vec<Option<usize>> {
    a.iter().zip(b).map(|(x, y)| x.or(*y)).collect()
}

/// Exact value map by enumerating every positional strategy profile.
/// Also cross-checks that max-min equals min-max on every vertex; a
/// violation would be an oracle bug, so it is fatal.
pub fn enumerate_values(game: &Srg) -> Result<Vec<f64>> {
    enumerate_values_capped(game, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_values_capped(game: &Srg, cap: u128) -> Result<Vec<f64>> {
    let max_e = StrategyEnum::new(game, Player::Max);
    let min_e = StrategyEnum::new(game, Player::Min);
    let total = max_e.profile_count().saturating_mul(min_e.profile_count());
    if total > cap {
        return Err(Error::InstanceTooLarge { size: total, cap });
    }
    let slots = game.slot_count();
    let max_strats = max_e.all();
    let min_strats = min_e.all();
    let mut maxmin = vec![f64::NEG_INFINITY; slots];
    let mut per_tau_max: Vec<Vec<f64>> = vec![vec![f64::NEG_INFINITY; slots]; min_strats.len()];
    for sigma in &max_strats {
        let mut min_over_tau = vec![f64::INFINITY; slots];
        for (ti, tau) in min_strats.iter().enumerate() {
            let vals = profile_values(game, &merge_profiles(sigma, tau));
            for v in game.vertex_ids() {
                if vals[v] < min_over_tau[v] {
                    min_over_tau[v] = vals[v];
                }
                if vals[v] > per_tau_max[ti][v] {
                    per_tau_max[ti][v] = vals[v];
                }
            }
        }
        for v in game.vertex_ids() {
            if min_over_tau[v] > maxmin[v] {
                maxmin[v] = min_over_tau[v];
            }
        }
    }
    let mut values = vec![0.0f64; slots];
    for v in game.vertex_ids() {
        let minmax = per_tau_max
            .iter()
            .map(|m| m[v])
            .fold(f64::INFINITY, f64::min);
        assert!(
            maxmin[v] == minmax,
            "positional equilibrium violated at vertex {v}: maxmin {} != minmax {} (oracle bug)",
            maxmin[v],
            minmax
        );
        values[v] = if maxmin[v] == 0.0 { 0.0 } else { maxmin[v] };
    }
    Ok(values)
}

/// Outcome of checking a solution against full opponent enumeration.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// A concrete refutation: at `vertex`, with the given opponent strategy,
/// the claimed guarantee `expected` is beaten by `achieved`.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub deviator: Player,
    pub vertex: VertexId,
    pub expected: f64,
    pub achieved: f64,
    pub opponent_strategy: Vec<Option<usize>>,
}

fn check_guarantees(
    game: &Srg,
    values: &[f64],
    strategies: &StrategyPair,
    starts: &[VertexId],
    cap: u128,
) -> Result<Verdict> {
    for v in game.vertex_ids() {
        if game.payoff(v).is_none() {
            let owned = match game.player(v).unwrap() {
                Player::Max => strategies.max_choice.get(v).copied().flatten(),
                Player::Min => strategies.min_choice.get(v).copied().flatten(),
            };
            let arc = owned.ok_or(Error::IncompleteStrategy { vertex: v })?;
            let a = game.arcs().get(arc).ok_or(Error::IncompleteStrategy { vertex: v })?;
            if a.tail != v {
                return Err(Error::IncompleteStrategy { vertex: v });
            }
        }
    }
    let max_e = StrategyEnum::new(game, Player::Max);
    let min_e = StrategyEnum::new(game, Player::Min);
    let total = max_e.profile_count().max(min_e.profile_count());
    if total > cap {
        return Err(Error::InstanceTooLarge { size: total, cap });
    }
    // Max's strategy must secure at least the value against every tau
    for tau in min_e.all() {
        let vals = profile_values(game, &merge_profiles(&strategies.max_choice, &tau));
        for &v in starts {
            if vals[v] < values[v] {
                return Ok(Verdict::Fail(Violation {
                    deviator: Player::Min,
                    vertex: v,
                    expected: values[v],
                    achieved: vals[v],
                    opponent_strategy: tau,
                }));
            }
        }
    }
    // Min's strategy must concede at most the value against every sigma
    for sigma in max_e.all() {
        let vals = profile_values(game, &merge_profiles(&sigma, &strategies.min_choice));
        for &v in starts {
            if vals[v] > values[v] {
                return Ok(Verdict::Fail(Violation {
                    deviator: Player::Max,
                    vertex: v,
                    expected: values[v],
                    achieved: vals[v],
                    opponent_strategy: sigma,
                }));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Verifies a strong solution: the guarantees must hold from every vertex.
pub fn verify_strong(game: &Srg, solution: &Solution) -> Result<Verdict> {
    verify_strong_capped(game, solution, DEFAULT_ENUMERATION_CAP)
}

pub fn verify_strong_capped(game: &Srg, solution: &Solution, cap: u128) -> Result<Verdict> {
    for t in game.terminal_ids() {
        let p = game.payoff(t).unwrap();
        if solution.values.get(t).copied() != Some(p) {
            return Ok(Verdict::Fail(Violation {
                deviator: Player::Max,
                vertex: t,
                expected: p,
                achieved: solution.values.get(t).copied().unwrap_or(f64::NAN),
                opponent_strategy: Vec::new(),
            }));
        }
    }
    let starts: Vec<VertexId> = game.vertex_ids().collect();
    check_guarantees(game, &solution.values, &solution.strategies, &starts, cap)
}

/// Verifies a weak solution: the guarantees only need to hold from `v0`.
pub fn verify_weak(game: &Srg, weak: &WeakSolution) -> Result<Verdict> {
    verify_weak_capped(game, weak, DEFAULT_ENUMERATION_CAP)
}

pub fn verify_weak_capped(game: &Srg, weak: &WeakSolution, cap: u128) -> Result<Verdict> {
    if !game.is_live(weak.v0) {
        return Err(Error::UnknownVertex(weak.v0));
    }
    let mut values = vec![0.0; game.slot_count()];
    values[weak.v0] = weak.value;
    check_guarantees(game, &values, &weak.strategies, &[weak.v0], cap)
}

/// Widest-path widths to the sink with a fixed removal set (no interdiction
/// decisions): width(v) is the maximum over v-to-sink paths of the minimum
/// capacity on the path, 0 when no path survives, infinite at the sink.
///
/// Computed by descending-capacity incremental reachability: arcs are added
/// widest-first, and a vertex's width is the capacity being added the moment
/// it first reaches the sink.
pub fn bottleneck_widths(net: &Network, removed: &[bool]) -> Vec<f64> {
    let n = net.vertex_count();
    let mut order: Vec<usize> = (0..net.arcs().len()).collect();
    order.sort_by(|&a, &b| {
        let ca = net.arcs()[a].capacity;
        let cb = net.arcs()[b].capacity;
        cb.partial_cmp(&ca).unwrap().then(a.cmp(&b))
    });
    let mut width = vec![0.0f64; n];
    let mut reached = vec![false; n];
    width[net.sink()] = f64::INFINITY;
    reached[net.sink()] = true;
    // arcs added so far, indexed by head
    let mut added_in: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut stack: Vec<VertexId> = Vec::new();
    for ai in order {
        if removed.get(ai).copied().unwrap_or(false) {
            continue;
        }
        let arc = &net.arcs()[ai];
        added_in[arc.head].push(arc.tail);
        if reached[arc.head] && !reached[arc.tail] {
            reached[arc.tail] = true;
            width[arc.tail] = arc.capacity;
            stack.push(arc.tail);
            while let Some(u) = stack.pop() {
                for i in 0..added_in[u].len() {
                    let x = added_in[u][i];
                    if !reached[x] {
                        reached[x] = true;
                        width[x] = arc.capacity;
                        stack.push(x);
                    }
                }
            }
        }
    }
    width
}

/// Exact interdiction widths by enumerating every budget-feasible removal
/// set: width(v) is the minimum over removal sets of the surviving
/// bottleneck width from v.
pub fn enumerate_widths(net: &Network) -> Result<Vec<f64>> {
    enumerate_widths_capped(net, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_widths_capped(net: &Network, cap: u128) -> Result<Vec<f64>> {
    let n = net.vertex_count();
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, a) in net.arcs().iter().enumerate() {
        out_arcs[a.tail].push(i);
    }
    // per-vertex list of removable subsets (indices into arcs)
    let mut choices: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    let mut total: u128 = 1;
    for v in 0..n {
        let k = net.budget(v) as usize;
        let subsets = subsets_up_to(&out_arcs[v], k);
        total = total.saturating_mul(subsets.len() as u128);
        choices.push(subsets);
    }
    if total > cap {
        return Err(Error::InstanceTooLarge { size: total, cap });
    }
    let mut best = vec![f64::INFINITY; n];
    let mut counter = vec![0usize; n];
    let mut removed = vec![false; net.arcs().len()];
    loop {
        for flag in removed.iter_mut() {
            *flag = false;
        }
        for v in 0..n {
            for &ai in &choices[v][counter[v]] {
                removed[ai] = true;
            }
        }
        let widths = bottleneck_widths(net, &removed);
        for v in 0..n {
            if widths[v] < best[v] {
                best[v] = widths[v];
            }
        }
        // advance mixed-radix counter
        let mut i = 0;
        loop {
            if i == n {
                return Ok(best);
            }
            counter[i] += 1;
            if counter[i] < choices[i].len() {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] != i + n - k {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn subsets_up_to(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for size in 1..=k.min(items.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| items[i]).collect());
            if !next_combination(&mut idx, items.len()) {
                break;
            }
        }
    }
    out
}
