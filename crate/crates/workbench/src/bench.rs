//! Benchmark harness: runs solver suites over generated instances and emits
//! CSV rows. Comparison and iteration columns are deterministic for a given
//! seed; wall time is advisory and marked as such in the docs.

use std::time::Instant;

use srg_core::interdiction::{
    solve_strong_sorted_capacities, solve_weak_loglog_capacities, solve_weak_logstar_capacities,
    sorted_capacity_order,
};
use srg_core::ledger::ComparisonLedger;
use srg_core::retrograde::sorting_method;
use srg_core::weak::{solve_weak, WeakAlgo};

use crate::gen::{gen_random_network, gen_random_srg, GenError, NetParams, SrgParams};

pub const CSV_HEADER: &str = "algo,n,m,comparisons,iterations,wall_ms,seed";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub algo: String,
    pub n: usize,
    pub m: usize,
    pub comparisons: u64,
    pub iterations: usize,
    pub wall_ms: f64,
    pub seed: u64,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{:.3},{}",
            self.algo, self.n, self.m, self.comparisons, self.iterations, self.wall_ms, self.seed
        )
    }
}

/// Game suite: for size `n`, the instance has `n` terminals, `n` player
/// vertices, and out-degrees 2..=4 (so roughly `3n` arcs).
pub fn srg_params_for_size(n: usize) -> SrgParams {
    SrgParams {
        n_max: n / 2,
        n_min: n - n / 2,
        n_term: n,
        out_degree: (2, 4),
        payoff_range: (-(4 * n as i64), 4 * n as i64),
        distinct_payoffs: false,
    }
}

pub fn bench_srg(
    algos: &[String],
    sizes: &[usize],
    seeds: &[u64],
) -> Result<Vec<BenchRow>, GenError> {
    let mut rows = Vec::new();
    for &n in sizes {
        let params = srg_params_for_size(n);
        for &seed in seeds {
            let game = gen_random_srg(&params, seed)?;
            let v0 = game.start().expect("generated games have a start");
            for algo in algos {
                let ledger = ComparisonLedger::new();
                let clock = Instant::now();
                let iterations = match algo.as_str() {
                    "sort" => {
                        sorting_method(&game, &ledger).expect("solve");
                        0
                    }
                    "paterson" => {
                        solve_weak(&game, v0, WeakAlgo::Paterson, &ledger).expect("solve").run.iterations
                    }
                    "loglog" => {
                        solve_weak(&game, v0, WeakAlgo::LogLog, &ledger).expect("solve").run.iterations
                    }
                    "logstar" => {
                        solve_weak(&game, v0, WeakAlgo::LogStar, &ledger).expect("solve").run.iterations
                    }
                    other => return Err(GenError::InfeasibleParameters(format!(
                        "unknown game algorithm `{other}`"
                    ))),
                };
                rows.push(BenchRow {
                    algo: algo.clone(),
                    n: game.num_terminals(),
                    m: game.num_arcs(),
                    comparisons: ledger.count(),
                    iterations,
                    wall_ms: clock.elapsed().as_secs_f64() * 1e3,
                    seed,
                });
            }
        }
    }
    Ok(rows)
}

/// Network suite: for size `m`, the instance has `m` arcs over `m/4`
/// vertices with budgets 0..=2.
pub fn net_params_for_size(m: usize) -> NetParams {
    NetParams {
        n_vertices: (m / 4).max(2),
        m_arcs: m,
        budget_range: (0, 2),
        allow_sparse: false,
    }
}

pub fn bench_net(
    algos: &[String],
    sizes: &[usize],
    seeds: &[u64],
) -> Result<Vec<BenchRow>, GenError> {
    let mut rows = Vec::new();
    for &m in sizes {
        let params = net_params_for_size(m);
        for &seed in seeds {
            let net = gen_random_network(&params, seed)?;
            for algo in algos {
                let ledger = ComparisonLedger::new();
                let clock = Instant::now();
                let iterations = match algo.as_str() {
                    "sorted" => {
                        let order = sorted_capacity_order(&net, &ledger);
                        solve_strong_sorted_capacities(&net, &order, &ledger).expect("solve");
                        0
                    }
                    "loglog" => {
                        solve_weak_loglog_capacities(&net, &ledger).expect("solve").iterations
                    }
                    "logstar" => {
                        solve_weak_logstar_capacities(&net, &ledger).expect("solve").iterations
                    }
                    other => return Err(GenError::InfeasibleParameters(format!(
                        "unknown network algorithm `{other}`"
                    ))),
                };
                rows.push(BenchRow {
                    algo: algo.clone(),
                    n: net.vertex_count(),
                    m: net.arcs().len(),
                    comparisons: ledger.count(),
                    iterations,
                    wall_ms: clock.elapsed().as_secs_f64() * 1e3,
                    seed,
                });
            }
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}
