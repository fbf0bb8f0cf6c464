//! Seed-deterministic instance generators. The same parameters and seed
//! always regenerate the same instance bit for bit.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use srg_core::game::{Srg, VertexKind};
use srg_core::interdiction::Network;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
}

/// Parameters for [`gen_random_srg`].
#[derive(Debug, Clone)]
pub struct SrgParams {
    pub n_max: usize,
    pub n_min: usize,
    pub n_term: usize,
    pub out_degree: (usize, usize),
    /// integer payoffs are drawn from this inclusive range
    pub payoff_range: (i64, i64),
    pub distinct_payoffs: bool,
}

impl Default for SrgParams {
    fn default() -> Self {
        SrgParams {
            n_max: 3,
            n_min: 3,
            n_term: 4,
            out_degree: (1, 3),
            payoff_range: (-8, 8),
            distinct_payoffs: false,
        }
    }
}

/// Random validated game. Every non-terminal's out-degree falls in the
/// requested range; arcs are steered so that every terminal is entered at
/// least once (so none are dropped as irrelevant).
pub fn gen_random_srg(p: &SrgParams, seed: u64) -> Result<Srg, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let non_term = p.n_max + p.n_min;
    if non_term == 0 {
        return Err(GenError::InfeasibleParameters("need at least one player vertex".into()));
    }
    if p.out_degree.0 < 1 || p.out_degree.0 > p.out_degree.1 {
        return Err(GenError::InfeasibleParameters(format!(
            "bad out-degree range {:?}",
            p.out_degree
        )));
    }
    let (lo, hi) = p.payoff_range;
    if lo > hi {
        return Err(GenError::InfeasibleParameters("empty payoff range".into()));
    }
    let span = (hi - lo + 1) as usize;
    if p.distinct_payoffs && span < p.n_term {
        return Err(GenError::InfeasibleParameters(format!(
            "cannot draw {} distinct payoffs from a range of {span}",
            p.n_term
        )));
    }
    let payoffs: Vec<f64> = if p.distinct_payoffs {
        let mut pool: Vec<i64> = (lo..=hi).collect();
        pool.shuffle(&mut rng);
        pool.truncate(p.n_term);
        pool.into_iter().map(|v| v as f64).collect()
    } else {
        (0..p.n_term).map(|_| rng.gen_range(lo..=hi) as f64).collect()
    };
    let total = non_term + p.n_term;
    let mut kinds = Vec::with_capacity(total);
    kinds.extend(std::iter::repeat(VertexKind::Max).take(p.n_max));
    kinds.extend(std::iter::repeat(VertexKind::Min).take(p.n_min));
    kinds.extend(payoffs.into_iter().map(VertexKind::Terminal));
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for v in 0..non_term {
        let d = rng.gen_range(p.out_degree.0..=p.out_degree.1);
        for _ in 0..d {
            arcs.push((v, rng.gen_range(0..total)));
        }
    }
    // retarget arcs so every terminal gains an incoming arc; with fewer
    // arcs than terminals that is impossible, and validation will drop the
    // uncovered ones as irrelevant
    if arcs.len() >= p.n_term {
        for attempt in 0..100 {
            let mut indeg = vec![0usize; total];
            for &(_, h) in &arcs {
                indeg[h] += 1;
            }
            let uncovered: Vec<usize> = (non_term..total).filter(|&t| indeg[t] == 0).collect();
            if uncovered.is_empty() {
                break;
            }
            if attempt == 99 {
                // deterministic fallback: arc i feeds terminal i
                for t in 0..p.n_term {
                    arcs[t].1 = non_term + t;
                }
                break;
            }
            for t in uncovered {
                let i = rng.gen_range(0..arcs.len());
                arcs[i].1 = t;
            }
        }
    }
    let start = Some(rng.gen_range(0..non_term));
    Ok(Srg::new(kinds, arcs, start).validate().expect("generator output is valid"))
}

/// Parameters for [`gen_random_network`].
#[derive(Debug, Clone)]
pub struct NetParams {
    pub n_vertices: usize,
    pub m_arcs: usize,
    pub budget_range: (u32, u32),
    /// permit `m < n` (outside the usual density assumption)
    pub allow_sparse: bool,
}

impl Default for NetParams {
    fn default() -> Self {
        NetParams { n_vertices: 6, m_arcs: 8, budget_range: (0, 2), allow_sparse: false }
    }
}

/// Random validated network. Capacities are a random permutation of 1..=m,
/// so they are distinct by construction; source is vertex 0 and the sink is
/// the last vertex.
pub fn gen_random_network(p: &NetParams, seed: u64) -> Result<Network, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if p.n_vertices < 2 {
        return Err(GenError::InfeasibleParameters("need at least two vertices".into()));
    }
    if p.m_arcs < p.n_vertices && !p.allow_sparse {
        return Err(GenError::InfeasibleParameters(format!(
            "{} arcs for {} vertices; pass allow_sparse to permit",
            p.m_arcs, p.n_vertices
        )));
    }
    if p.budget_range.0 > p.budget_range.1 {
        return Err(GenError::InfeasibleParameters("empty budget range".into()));
    }
    let n = p.n_vertices;
    let sink = n - 1;
    let mut caps: Vec<f64> = (1..=p.m_arcs).map(|c| c as f64).collect();
    caps.shuffle(&mut rng);
    let mut arcs = Vec::with_capacity(p.m_arcs);
    for cap in caps {
        let tail = rng.gen_range(0..n - 1);
        let mut head = rng.gen_range(0..n);
        while head == tail {
            head = rng.gen_range(0..n);
        }
        arcs.push((tail, head, cap));
    }
    let budgets = (0..n)
        .map(|_| rng.gen_range(p.budget_range.0..=p.budget_range.1))
        .collect();
    Ok(Network::new(n, arcs, budgets, 0, sink)
        .validate()
        .expect("generator output is valid"))
}
