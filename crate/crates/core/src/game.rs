//! Game model for simple recursive games.
//!
//! An [`Srg`] is a digraph whose vertices are owned by Max, by Min, or are
//! payoff-labeled terminals. Max and Min move a token along arcs; reaching a
//! terminal pays Min-to-Max its payoff, infinite play pays 0. Parallel arcs
//! are kept as a multiset and self-loops are legal on non-terminals (a
//! self-loop is a "stay" move enabling infinite play).
//!
//! Vertex ids are stable: transformations that remove vertices leave a dead
//! slot behind instead of renumbering, so results can be mapped across
//! merges. [`Srg::validate`] compacts ids to a dense range.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Max,
    Min,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Max => Player::Min,
            Player::Min => Player::Max,
        }
    }
}

/// Role of a vertex: a position owned by a player, or a terminal paying a
/// fixed amount from Min to Max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VertexKind {
    Max,
    Min,
    Terminal(f64),
}

impl VertexKind {
    pub fn player(self) -> Option<Player> {
        match self {
            VertexKind::Max => Some(Player::Max),
            VertexKind::Min => Some(Player::Min),
            VertexKind::Terminal(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
}

/// Sign of a game value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Negative
        } else if x > 0.0 {
            Sign::Positive
        } else {
            Sign::Zero
        }
    }
}

/// One chosen outgoing arc per owned vertex, per player. Entries are indexed
/// by vertex id; `None` for vertices the player does not own (or dead slots).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StrategyPair {
    pub max_choice: Vec<Option<ArcId>>,
    pub min_choice: Vec<Option<ArcId>>,
}

impl StrategyPair {
    pub fn empty(slots: usize) -> Self {
        StrategyPair {
            max_choice: vec![None; slots],
            min_choice: vec![None; slots],
        }
    }

    pub fn choice(&self, player: Player, v: VertexId) -> Option<ArcId> {
        match player {
            Player::Max => self.max_choice.get(v).copied().flatten(),
            Player::Min => self.min_choice.get(v).copied().flatten(),
        }
    }
}

/// A strong solution candidate: one value per vertex plus a positional
/// strategy pair. `values` is indexed by vertex id; entries for dead slots
/// are unspecified (0.0). Terminals carry their own payoff as value.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub values: Vec<f64>,
    pub strategies: StrategyPair,
}

/// Weak solution: a value claim at one start vertex plus a full strategy
/// pair. No value claim is made for other vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakSolution {
    pub v0: VertexId,
    pub value: f64,
    pub strategies: StrategyPair,
}

/// Simple recursive game. See the module docs for the id-stability rules.
#[derive(Debug, Clone, PartialEq)]
pub struct Srg {
    slots: Vec<Option<VertexKind>>,
    arcs: Vec<Arc>,
    start: Option<VertexId>,
}

impl Srg {
    /// Builds a game without normalizing it. Ids are the indices into
    /// `kinds`. Call [`Srg::validate`] to check invariants and compact.
    pub fn new(kinds: Vec<VertexKind>, arcs: Vec<(VertexId, VertexId)>, start: Option<VertexId>) -> Srg {
        Srg {
            slots: kinds.into_iter().map(Some).collect(),
            arcs: arcs.into_iter().map(|(tail, head)| Arc { tail, head }).collect(),
            start,
        }
    }

    /// Number of id slots, including dead ones. Arrays indexed by vertex id
    /// are sized by this.
    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn kind(&self, v: VertexId) -> Option<VertexKind> {
        self.slots.get(v).copied().flatten()
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        self.kind(v).is_some()
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        matches!(self.kind(v), Some(VertexKind::Terminal(_)))
    }

    pub fn payoff(&self, v: VertexId) -> Option<f64> {
        match self.kind(v) {
            Some(VertexKind::Terminal(p)) => Some(p),
            _ => None,
        }
    }

    pub fn player(&self, v: VertexId) -> Option<Player> {
        self.kind(v).and_then(VertexKind::player)
    }

    pub fn start(&self) -> Option<VertexId> {
        self.start
    }

    pub fn set_start(&mut self, start: Option<VertexId>) {
        self.start = start;
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.slots.iter().enumerate().filter_map(|(i, s)| s.map(|_| i))
    }

    pub fn terminal_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| matches!(s, Some(VertexKind::Terminal(_))).then_some(i))
    }

    pub fn num_vertices(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    pub fn num_terminals(&self) -> usize {
        self.terminal_ids().count()
    }

    /// Out-degree per slot (dead slots report 0).
    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.slots.len()];
        for a in &self.arcs {
            deg[a.tail] += 1;
        }
        deg
    }

    /// In-degree per slot.
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.slots.len()];
        for a in &self.arcs {
            deg[a.head] += 1;
        }
        deg
    }

    /// Outgoing arc ids per slot, in arc insertion order.
    pub fn out_arcs(&self) -> Vec<Vec<ArcId>> {
        let mut out = vec![Vec::new(); self.slots.len()];
        for (i, a) in self.arcs.iter().enumerate() {
            out[a.tail].push(i);
        }
        out
    }

    /// Incoming arc ids per slot, in arc insertion order.
    pub fn in_arcs(&self) -> Vec<Vec<ArcId>> {
        let mut inc = vec![Vec::new(); self.slots.len()];
        for (i, a) in self.arcs.iter().enumerate() {
            inc[a.head].push(i);
        }
        inc
    }

    /// Checks structural invariants, drops terminals that no arc enters
    /// (they are irrelevant — except a terminal designated as start, which
    /// stays so that trivial games remain solvable), and compacts ids to
    /// 0..n. The start marker is remapped along.
    pub fn validate(&self) -> Result<Srg> {
        for (i, a) in self.arcs.iter().enumerate() {
            if !self.is_live(a.tail) || !self.is_live(a.head) {
                return Err(Error::DanglingArc { tail: a.tail, head: a.head });
            }
            if self.is_terminal(a.tail) {
                return Err(Error::TerminalWithOutgoingArc(a.tail));
            }
            let _ = i;
        }
        if let Some(s) = self.start {
            if !self.is_live(s) {
                return Err(Error::UnknownVertex(s));
            }
        }
        let out = self.out_degrees();
        let inc = self.in_degrees();
        let mut keep = vec![false; self.slots.len()];
        for v in self.vertex_ids() {
            match self.kind(v).unwrap() {
                VertexKind::Terminal(p) => {
                    if !p.is_finite() {
                        return Err(Error::NonFinitePayoff(v));
                    }
                    keep[v] = inc[v] > 0 || self.start == Some(v);
                }
                _ => {
                    if out[v] == 0 {
                        return Err(Error::NonTerminalWithoutMoves(v));
                    }
                    keep[v] = true;
                }
            }
        }
        // compact
        let mut remap: Vec<Option<VertexId>> = vec![None; self.slots.len()];
        let mut kinds = Vec::new();
        for v in 0..self.slots.len() {
            if keep[v] {
                remap[v] = Some(kinds.len());
                // normalize -0.0 payoffs so value grouping is bit-stable
                let k = match self.slots[v].unwrap() {
                    VertexKind::Terminal(p) if p == 0.0 => VertexKind::Terminal(0.0),
                    k => k,
                };
                kinds.push(Some(k));
            }
        }
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc { tail: remap[a.tail].unwrap(), head: remap[a.head].unwrap() })
            .collect();
        Ok(Srg {
            slots: kinds,
            arcs,
            start: self.start.map(|s| remap[s].unwrap()),
        })
    }

    /// Merges non-terminal `v` into terminal `t`: first removes all outgoing
    /// arcs of `v` (so self-loops on `v` vanish), then redirects all arcs
    /// entering `v` to enter `t`, then removes `v`.
    pub fn merge_into_terminal(&self, v: VertexId, t: VertexId) -> Result<Srg> {
        match self.kind(v) {
            None => return Err(Error::UnknownVertex(v)),
            Some(VertexKind::Terminal(_)) => return Err(Error::WrongRole(v)),
            _ => {}
        }
        match self.kind(t) {
            None => return Err(Error::UnknownVertex(t)),
            Some(VertexKind::Terminal(_)) => {}
            _ => return Err(Error::WrongRole(t)),
        }
        let mut g = self.clone();
        g.arcs.retain(|a| a.tail != v);
        for a in &mut g.arcs {
            if a.head == v {
                a.head = t;
            }
        }
        g.slots[v] = None;
        if g.start == Some(v) {
            g.start = Some(t);
        }
        Ok(g)
    }

    /// Merges terminal `s` into terminal `t`: arcs entering `s` now enter
    /// `t`, and `s` disappears together with its payoff.
    pub fn merge_terminals(&self, s: VertexId, t: VertexId) -> Result<Srg> {
        if s == t {
            return Err(Error::SameVertex(s));
        }
        for v in [s, t] {
            match self.kind(v) {
                None => return Err(Error::UnknownVertex(v)),
                Some(VertexKind::Terminal(_)) => {}
                _ => return Err(Error::WrongRole(v)),
            }
        }
        let mut g = self.clone();
        for a in &mut g.arcs {
            if a.head == s {
                a.head = t;
            }
        }
        g.slots[s] = None;
        if g.start == Some(s) {
            g.start = Some(t);
        }
        Ok(g)
    }

    /// Merges each group of terminals into its first member and assigns the
    /// given payoffs. Arc `k` of the coarse game corresponds to arc `k` of
    /// `self` (only heads are redirected), which is what lets coarse-game
    /// strategies be read back directly.
    pub(crate) fn coarsen_unchecked(&self, groups: &[Vec<VertexId>], payoffs: &[f64]) -> Srg {
        debug_assert_eq!(groups.len(), payoffs.len());
        let mut rep_of: Vec<Option<VertexId>> = vec![None; self.slots.len()];
        let mut g = self.clone();
        for (group, &p) in groups.iter().zip(payoffs) {
            let rep = group[0];
            for &t in group {
                rep_of[t] = Some(rep);
                if t != rep {
                    g.slots[t] = None;
                }
            }
            g.slots[rep] = Some(VertexKind::Terminal(p));
        }
        for a in &mut g.arcs {
            if let Some(rep) = rep_of[a.head] {
                a.head = rep;
            }
        }
        if let Some(s) = g.start {
            if let Some(rep) = rep_of[s] {
                g.start = Some(rep);
            }
        }
        g
    }

    /// Coarsens the game by merging each group of terminals into one.
    ///
    /// `groups` must partition the terminal set into sign-homogeneous blocks
    /// that are contiguous in payoff order, supplied in increasing payoff
    /// order. The coarse payoff of a group is its rank as a signed integer:
    /// negative groups count down to -1, a group of zeros gets 0, positive
    /// groups count up from +1. Returns the coarse game plus, per group, the
    /// id of the surviving representative terminal.
    pub fn coarsen(&self, groups: &[Vec<VertexId>]) -> Result<(Srg, Vec<(VertexId, Vec<VertexId>)>)> {
        let mut seen = vec![false; self.slots.len()];
        let mut count = 0usize;
        let mut signs = Vec::with_capacity(groups.len());
        let mut ranges = Vec::with_capacity(groups.len());
        for (gi, group) in groups.iter().enumerate() {
            if group.is_empty() {
                return Err(Error::GroupNotContiguous { group: gi });
            }
            let mut lo = None;
            let mut hi = None;
            let mut sign = None;
            for &t in group {
                let p = self.payoff(t).ok_or(Error::WrongRole(t))?;
                if seen[t] {
                    return Err(Error::GroupNotContiguous { group: gi });
                }
                seen[t] = true;
                count += 1;
                let s = Sign::of(p);
                match sign {
                    None => sign = Some(s),
                    Some(prev) if prev != s => {
                        return Err(Error::GroupNotSignHomogeneous { group: gi })
                    }
                    _ => {}
                }
                let key = (p, t);
                if lo.map_or(true, |l| key < l) {
                    lo = Some(key);
                }
                if hi.map_or(true, |h| key > h) {
                    hi = Some(key);
                }
            }
            signs.push(sign.unwrap());
            ranges.push((lo.unwrap(), hi.unwrap()));
        }
        if count != self.num_terminals() {
            return Err(Error::GroupNotContiguous { group: groups.len() });
        }
        for (gi, w) in ranges.windows(2).enumerate() {
            if w[0].1 >= w[1].0 {
                return Err(Error::GroupNotContiguous { group: gi + 1 });
            }
        }
        // group index of the first non-negative group decides the rank offsets
        let negatives = signs.iter().filter(|s| **s == Sign::Negative).count() as i64;
        let mut payoffs = Vec::with_capacity(groups.len());
        let mut pos_rank = 0i64;
        for (gi, sign) in signs.iter().enumerate() {
            let rank = match sign {
                Sign::Negative => gi as i64 - negatives,
                Sign::Zero => 0,
                Sign::Positive => {
                    pos_rank += 1;
                    pos_rank
                }
            };
            payoffs.push(rank as f64);
        }
        let coarse = self.coarsen_unchecked(groups, &payoffs);
        let mapping = groups.iter().map(|g| (g[0], g.clone())).collect();
        Ok((coarse, mapping))
    }

    /// Splits the game along a value map: one subgame per distinct value,
    /// containing exactly the vertices of that value and the arcs between
    /// them. Removing the cross-value arcs does not change any value, so
    /// solving the parts solves the whole. Subgames keep original ids.
    pub fn split_by_value(&self, values: &[f64]) -> Result<Vec<Srg>> {
        Ok(self.split_by_value_mapped(values)?.into_iter().map(|(_, g, _)| g).collect())
    }

    /// As [`Srg::split_by_value`], but also reports each subgame's value and
    /// the original arc id behind each subgame arc.
    pub(crate) fn split_by_value_mapped(
        &self,
        values: &[f64],
    ) -> Result<Vec<(f64, Srg, Vec<ArcId>)>> {
        for v in self.vertex_ids() {
            let val = values.get(v).copied().ok_or(Error::MissingValue(v))?;
            if !val.is_finite() {
                return Err(Error::MissingValue(v));
            }
        }
        let norm = |x: f64| if x == 0.0 { 0.0f64 } else { x };
        let mut groups: HashMap<u64, usize> = HashMap::new();
        let mut order: Vec<f64> = Vec::new();
        for v in self.vertex_ids() {
            let val = norm(values[v]);
            groups.entry(val.to_bits()).or_insert_with(|| {
                order.push(val);
                order.len() - 1
            });
        }
        // deterministic output order: ascending by value
        let mut sorted = order.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let index_of: HashMap<u64, usize> =
            sorted.iter().enumerate().map(|(i, v)| (v.to_bits(), i)).collect();
        let mut out: Vec<(f64, Srg, Vec<ArcId>)> = sorted
            .iter()
            .map(|&val| {
                (
                    val,
                    Srg {
                        slots: vec![None; self.slots.len()],
                        arcs: Vec::new(),
                        start: None,
                    },
                    Vec::new(),
                )
            })
            .collect();
        for v in self.vertex_ids() {
            let gi = index_of[&norm(values[v]).to_bits()];
            out[gi].1.slots[v] = self.slots[v];
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if norm(values[a.tail]) == norm(values[a.head]) {
                let gi = index_of[&norm(values[a.tail]).to_bits()];
                out[gi].1.arcs.push(*a);
                out[gi].2.push(i);
            }
        }
        if let Some(s) = self.start {
            let gi = index_of[&norm(values[s]).to_bits()];
            out[gi].1.start = Some(s);
        }
        Ok(out)
    }

    /// Mirror game: every payoff negated, Max and Min swapped. Negation is
    /// an involution and values negate with it.
    pub fn negate(&self) -> Srg {
        let slots = self
            .slots
            .iter()
            .map(|s| {
                s.map(|k| match k {
                    VertexKind::Max => VertexKind::Min,
                    VertexKind::Min => VertexKind::Max,
                    VertexKind::Terminal(p) => {
                        VertexKind::Terminal(if p == 0.0 { 0.0 } else { -p })
                    }
                })
            })
            .collect();
        Srg {
            slots,
            arcs: self.arcs.clone(),
            start: self.start,
        }
    }

    /// Restriction to a vertex set: everything else is tombstoned and arcs
    /// must have both endpoints kept. Ids are preserved.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Srg {
        let slots = self
            .slots
            .iter()
            .enumerate()
            .map(|(i, s)| if keep[i] { *s } else { None })
            .collect();
        let arcs = self
            .arcs
            .iter()
            .filter(|a| keep[a.tail] && keep[a.head])
            .copied()
            .collect();
        let start = self.start.filter(|&s| keep[s]);
        Srg { slots, arcs, start }
    }
}
