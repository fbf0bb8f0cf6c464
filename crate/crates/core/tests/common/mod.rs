//! Seeded instance generators shared by the integration tests.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use srg_core::game::{Srg, VertexKind};
use srg_core::interdiction::Network;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random validated game: `n_max`/`n_min` player vertices, up to `n_term`
/// terminals (ones no arc reaches are redirected into coverage), out-degrees
/// in `outdeg`, integer payoffs in `[-span, span]`.
pub fn random_game(
    rng: &mut ChaCha8Rng,
    n_max: usize,
    n_min: usize,
    n_term: usize,
    outdeg: (usize, usize),
    span: i64,
) -> Srg {
    let non_term = n_max + n_min;
    assert!(non_term > 0);
    let total = non_term + n_term;
    let mut kinds = Vec::with_capacity(total);
    for _ in 0..n_max {
        kinds.push(VertexKind::Max);
    }
    for _ in 0..n_min {
        kinds.push(VertexKind::Min);
    }
    for _ in 0..n_term {
        kinds.push(VertexKind::Terminal(rng.gen_range(-span..=span) as f64));
    }
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for v in 0..non_term {
        let d = rng.gen_range(outdeg.0..=outdeg.1);
        for _ in 0..d {
            arcs.push((v, rng.gen_range(0..total)));
        }
    }
    // steer arcs so every terminal is entered at least once
    for _ in 0..200 {
        let mut indeg = vec![0usize; total];
        for &(_, h) in &arcs {
            indeg[h] += 1;
        }
        let uncovered: Vec<usize> = (non_term..total).filter(|&t| indeg[t] == 0).collect();
        if uncovered.is_empty() {
            break;
        }
        for t in uncovered {
            let i = rng.gen_range(0..arcs.len());
            arcs[i].1 = t;
        }
    }
    let start = Some(rng.gen_range(0..non_term));
    Srg::new(kinds, arcs, start).validate().expect("generated game is valid")
}

/// Random positive-payoff game (payoffs in `[1, span]`).
pub fn random_positive_game(
    rng: &mut ChaCha8Rng,
    n_max: usize,
    n_min: usize,
    n_term: usize,
    outdeg: (usize, usize),
    span: i64,
) -> Srg {
    loop {
        let g = random_game(rng, n_max, n_min, n_term, outdeg, span);
        let shifted: Vec<VertexKind> = (0..g.slot_count())
            .map(|v| match g.kind(v).unwrap() {
                VertexKind::Terminal(p) => VertexKind::Terminal(p.abs().max(1.0)),
                k => k,
            })
            .collect();
        let arcs = g.arcs().iter().map(|a| (a.tail, a.head)).collect();
        let g = Srg::new(shifted, arcs, g.start()).validate().unwrap();
        if g.num_terminals() > 0 {
            return g;
        }
    }
}

/// Random validated network with distinct capacities (a permutation of
/// 1..=m) and budgets in `[0, budget_max]`.
pub fn random_network(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    budget_max: u32,
) -> Network {
    assert!(n >= 2);
    let sink = n - 1;
    let mut caps: Vec<f64> = (1..=m).map(|c| c as f64).collect();
    caps.shuffle(rng);
    let mut arcs = Vec::with_capacity(m);
    for cap in caps {
        let tail = rng.gen_range(0..n - 1); // never the sink
        let mut head = rng.gen_range(0..n);
        while head == tail {
            head = rng.gen_range(0..n);
        }
        arcs.push((tail, head, cap));
    }
    let budgets = (0..n).map(|_| rng.gen_range(0..=budget_max)).collect();
    Network::new(n, arcs, budgets, 0, sink).validate().unwrap()
}
