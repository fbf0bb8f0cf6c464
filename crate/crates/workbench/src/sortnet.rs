//! Sorting networks as games.
//!
//! Each comparator on wires (i, j) becomes a Min-vertex (the low output) and
//! a Max-vertex (the high output), both reading the two input wires. Strong
//! values at the output wires are then the sorted inputs, so solving the
//! game is forced to sort — the construction behind the comparison lower
//! bound for strong solving. Batcher's odd-even mergesort supplies the
//! comparators (arbitrary widths via pad-to-power-of-two and prune).

use srg_core::game::{Srg, VertexId, VertexKind};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SortNetError {
    #[error("sorting network width must be at least 2, got {0}")]
    WidthTooSmall(usize),
}

/// Batcher odd-even mergesort comparators for `n` wires, in execution
/// order. Comparator `(i, j)` with `i < j` places min on `i`, max on `j`.
pub fn batcher_comparators(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let padded = n.next_power_of_two();
    sort_rec(0, padded, &mut out);
    // wires >= n hold a virtual +infinity: comparators touching them are
    // no-ops and drop out (i < j always, so j < n keeps both ends real)
    out.retain(|&(_, j)| j < n);
    out
}

fn sort_rec(lo: usize, len: usize, out: &mut Vec<(usize, usize)>) {
    if len > 1 {
        let half = len / 2;
        sort_rec(lo, half, out);
        sort_rec(lo + half, half, out);
        merge_rec(lo, len, 1, out);
    }
}

fn merge_rec(lo: usize, len: usize, stride: usize, out: &mut Vec<(usize, usize)>) {
    let step = stride * 2;
    if step < len {
        merge_rec(lo, len, step, out);
        merge_rec(lo + stride, len, step, out);
        let mut i = lo + stride;
        while i + stride < lo + len {
            out.push((i, i + stride));
            i += step;
        }
    } else {
        out.push((lo, lo + stride));
    }
}

/// Comparator count of the unpruned (power-of-two) network:
/// `(k^2 - k + 4) * 2^(k-2) - 1` for width `2^k` (1 comparator at k = 1).
pub fn batcher_comparator_count(k: u32) -> usize {
    if k <= 1 {
        return 1;
    }
    let kk = k as usize;
    (kk * kk - kk + 4) * (1usize << (kk - 2)) - 1
}

/// Builds the acyclic game simulating the sorting network on the given
/// payoffs. Returns the game and the vertex ids holding the output wires
/// (ascending: index 0 is the minimum wire).
pub fn gen_sorting_network_srg(payoffs: &[f64]) -> Result<(Srg, Vec<VertexId>), SortNetError> {
    let n = payoffs.len();
    if n < 2 {
        return Err(SortNetError::WidthTooSmall(n));
    }
    let comparators = batcher_comparators(n);
    let mut kinds: Vec<VertexKind> = payoffs.iter().map(|&p| VertexKind::Terminal(p)).collect();
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut wire: Vec<VertexId> = (0..n).collect();
    for (i, j) in comparators {
        let low = kinds.len();
        kinds.push(VertexKind::Min);
        let high = kinds.len();
        kinds.push(VertexKind::Max);
        arcs.push((low, wire[i]));
        arcs.push((low, wire[j]));
        arcs.push((high, wire[i]));
        arcs.push((high, wire[j]));
        wire[i] = low;
        wire[j] = high;
    }
    let game = Srg::new(kinds, arcs, None)
        .validate()
        .expect("sorting-network games are valid by construction");
    Ok((game, wire))
}
