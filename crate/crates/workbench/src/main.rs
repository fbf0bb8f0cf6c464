//! `srg` command line: generate, solve, verify, reduce, and benchmark game
//! and interdiction instances.
//!
//! Exit codes: 0 success, 1 error, 2 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use srg_core::interdiction::{
    reduce_srg_to_interdiction, solve_strong_sorted_capacities, solve_weak_loglog_capacities,
    solve_weak_logstar_capacities, sorted_capacity_order,
};
use srg_core::ledger::ComparisonLedger;
use srg_core::oracle::{enumerate_values, enumerate_widths, verify_strong, verify_weak, Verdict};
use srg_core::retrograde::{solve_signs, sorting_method};
use srg_core::weak::{solve_weak, WeakAlgo};

use srg_workbench::bench::{bench_net, bench_srg, to_csv};
use srg_workbench::dot::{network_to_dot, srg_to_dot};
use srg_workbench::gen::{gen_random_network, gen_random_srg, NetParams, SrgParams};
use srg_workbench::io::{load_network, load_srg, save_network, Document};
use srg_workbench::sortnet::gen_sorting_network_srg;

#[derive(Parser)]
#[command(name = "srg", about = "solvers for simple recursive games and widest-path interdiction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SrgMode {
    Strong,
    Weak,
    Sign,
}

#[derive(Clone, Copy, ValueEnum)]
enum SrgAlgo {
    Sort,
    Paterson,
    Loglog,
    Logstar,
}

#[derive(Clone, Copy, ValueEnum)]
enum NetMode {
    Strong,
    Weak,
}

#[derive(Clone, Copy, ValueEnum)]
enum NetAlgo {
    Sorted,
    Loglog,
    Logstar,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Srg,
    Net,
    Sortnet,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Srg,
    Net,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random game, network, or sorting-network game
    Gen(GenArgs),
    /// Solve a game file
    SolveSrg(SolveSrgArgs),
    /// Solve a network file
    SolveNet(SolveNetArgs),
    /// Brute-force values/widths of a small instance
    Oracle {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: OracleKind,
    },
    /// Solve and verify against full opponent enumeration (exit 2 on failure)
    Verify(VerifyArgs),
    /// Reduce a positive-payoff game to a widest-path interdiction network
    Reduce {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run solver suites over generated instances and emit CSV
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// game: Max vertices
    #[arg(long, default_value_t = 3)]
    max_vertices: usize,
    /// game: Min vertices
    #[arg(long, default_value_t = 3)]
    min_vertices: usize,
    /// game: terminals
    #[arg(long, default_value_t = 4)]
    terminals: usize,
    /// game: out-degree range "lo,hi"
    #[arg(long, default_value = "1,3")]
    out_degree: String,
    /// game: payoff range "lo,hi" (integers)
    #[arg(long, default_value = "-8,8")]
    payoffs: String,
    /// game: draw payoffs without replacement
    #[arg(long, default_value_t = false)]
    distinct: bool,
    /// network: vertices
    #[arg(long, default_value_t = 6)]
    vertices: usize,
    /// network: arcs
    #[arg(long, default_value_t = 8)]
    arcs: usize,
    /// network: budget range "lo,hi"
    #[arg(long, default_value = "0,2")]
    budgets: String,
    /// network: allow fewer arcs than vertices
    #[arg(long, default_value_t = false)]
    allow_sparse: bool,
    /// sortnet: width (payoffs are a seeded shuffle of 1..=width)
    #[arg(long, default_value_t = 8)]
    width: usize,
    /// write the instance here (stdout otherwise)
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// also write a DOT rendering here
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct SolveSrgArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = SrgMode::Strong)]
    mode: SrgMode,
    #[arg(long, value_enum, default_value_t = SrgAlgo::Sort)]
    algo: SrgAlgo,
    /// start vertex for weak solving (defaults to the file's start)
    #[arg(long)]
    v0: Option<usize>,
    /// print the comparison ledger
    #[arg(long, default_value_t = false)]
    ledger: bool,
}

#[derive(Args)]
struct SolveNetArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = NetMode::Strong)]
    mode: NetMode,
    #[arg(long, value_enum, default_value_t = NetAlgo::Sorted)]
    algo: NetAlgo,
    #[arg(long, default_value_t = false)]
    ledger: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = SrgMode::Strong)]
    mode: SrgMode,
    #[arg(long, value_enum, default_value_t = SrgAlgo::Sort)]
    algo: SrgAlgo,
    #[arg(long)]
    v0: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    kind: OracleKind,
    /// comma-separated algorithms (game: sort,paterson,loglog,logstar;
    /// network: sorted,loglog,logstar)
    #[arg(long)]
    algos: String,
    /// comma-separated instance sizes (terminals for games, arcs for networks)
    #[arg(long)]
    sizes: String,
    /// comma-separated seeds
    #[arg(long, default_value = "1")]
    seeds: String,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn parse_pair<T: std::str::FromStr>(text: &str, what: &str) -> Result<(T, T)> {
    let mut it = text.split(',');
    let err = || anyhow!("expected `lo,hi` for {what}, got `{text}`");
    let lo = it.next().ok_or_else(err)?.trim().parse().map_err(|_| err())?;
    let hi = it.next().ok_or_else(err)?.trim().parse().map_err(|_| err())?;
    if it.next().is_some() {
        bail!("expected `lo,hi` for {what}, got `{text}`");
    }
    Ok((lo, hi))
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| anyhow!("bad {what} entry `{s}` in `{text}`"))
        })
        .collect()
}

fn write_or_print(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_gen(args: GenArgs) -> Result<()> {
    match args.kind {
        Kind::Srg => {
            let (lo, hi) = parse_pair(&args.out_degree, "--out-degree")?;
            let (plo, phi) = parse_pair(&args.payoffs, "--payoffs")?;
            let params = SrgParams {
                n_max: args.max_vertices,
                n_min: args.min_vertices,
                n_term: args.terminals,
                out_degree: (lo, hi),
                payoff_range: (plo, phi),
                distinct_payoffs: args.distinct,
            };
            let game = gen_random_srg(&params, args.seed)?;
            write_or_print(&args.out, &Document::from_srg(&game).to_json())?;
            if let Some(dot) = &args.dot {
                std::fs::write(dot, srg_to_dot(&game))?;
            }
        }
        Kind::Net => {
            let (blo, bhi) = parse_pair(&args.budgets, "--budgets")?;
            let params = NetParams {
                n_vertices: args.vertices,
                m_arcs: args.arcs,
                budget_range: (blo, bhi),
                allow_sparse: args.allow_sparse,
            };
            let net = gen_random_network(&params, args.seed)?;
            if net.below_density_assumption() {
                eprintln!(
                    "warning: {} arcs < {} vertices; complexity bounds assume m >= n",
                    net.arcs().len(),
                    net.vertex_count()
                );
            }
            write_or_print(&args.out, &Document::from_network(&net).to_json())?;
            if let Some(dot) = &args.dot {
                std::fs::write(dot, network_to_dot(&net))?;
            }
        }
        Kind::Sortnet => {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
            let mut payoffs: Vec<f64> = (1..=args.width).map(|p| p as f64).collect();
            payoffs.shuffle(&mut rng);
            let (game, outputs) = gen_sorting_network_srg(&payoffs)?;
            eprintln!("output wires: {outputs:?}");
            write_or_print(&args.out, &Document::from_srg(&game).to_json())?;
            if let Some(dot) = &args.dot {
                std::fs::write(dot, srg_to_dot(&game))?;
            }
        }
    }
    Ok(())
}

fn pick_v0(game: &srg_core::game::Srg, flag: Option<usize>) -> Result<usize> {
    flag.or_else(|| game.start())
        .ok_or_else(|| anyhow!("no start vertex in the file; pass --v0"))
}

fn run_solve_srg(args: SolveSrgArgs) -> Result<()> {
    let game = load_srg(&args.input)?.validate()?;
    let ledger = ComparisonLedger::new();
    match args.mode {
        SrgMode::Strong => {
            let sol = sorting_method(&game, &ledger)?;
            for v in game.vertex_ids() {
                println!("value {v} = {}", sol.values[v]);
            }
        }
        SrgMode::Sign => {
            let (signs, _) = solve_signs(&game)?;
            for v in game.vertex_ids() {
                println!("sign {v} = {:?}", signs[v]);
            }
        }
        SrgMode::Weak => {
            let v0 = pick_v0(&game, args.v0)?;
            let algo = match args.algo {
                SrgAlgo::Sort => {
                    let sol = sorting_method(&game, &ledger)?;
                    println!("value {v0} = {}", sol.values[v0]);
                    if args.ledger {
                        println!("comparisons = {}", ledger.count());
                    }
                    return Ok(());
                }
                SrgAlgo::Paterson => WeakAlgo::Paterson,
                SrgAlgo::Loglog => WeakAlgo::LogLog,
                SrgAlgo::Logstar => WeakAlgo::LogStar,
            };
            let out = solve_weak(&game, v0, algo, &ledger)?;
            println!("value {v0} = {}", out.value);
            println!("iterations = {}", out.run.iterations);
        }
    }
    if args.ledger {
        println!("comparisons = {}", ledger.count());
    }
    Ok(())
}

fn run_solve_net(args: SolveNetArgs) -> Result<()> {
    let net = load_network(&args.input)?.validate()?;
    let ledger = ComparisonLedger::new();
    match (args.mode, args.algo) {
        (NetMode::Strong, _) | (NetMode::Weak, NetAlgo::Sorted) => {
            let order = sorted_capacity_order(&net, &ledger);
            let sol = solve_strong_sorted_capacities(&net, &order, &ledger)?;
            match args.mode {
                NetMode::Strong => {
                    for v in 0..net.vertex_count() {
                        println!("width {v} = {}", sol.width[v]);
                    }
                }
                NetMode::Weak => println!("width {} = {}", net.source(), sol.width[net.source()]),
            }
            println!("removed = {:?}", sol.removed);
        }
        (NetMode::Weak, algo) => {
            let run = match algo {
                NetAlgo::Loglog => solve_weak_loglog_capacities(&net, &ledger)?,
                NetAlgo::Logstar => solve_weak_logstar_capacities(&net, &ledger)?,
                NetAlgo::Sorted => unreachable!(),
            };
            println!("width {} = {}", net.source(), run.width_at_source);
            println!("removed = {:?}", run.removed);
            println!("iterations = {}", run.iterations);
        }
    }
    if args.ledger {
        println!("comparisons = {}", ledger.count());
    }
    Ok(())
}

fn run_oracle(input: PathBuf, kind: OracleKind) -> Result<()> {
    match kind {
        OracleKind::Srg => {
            let game = load_srg(&input)?.validate()?;
            let values = enumerate_values(&game)?;
            for v in game.vertex_ids() {
                println!("value {v} = {}", values[v]);
            }
        }
        OracleKind::Net => {
            let net = load_network(&input)?.validate()?;
            let widths = enumerate_widths(&net)?;
            for (v, w) in widths.iter().enumerate() {
                println!("width {v} = {w}");
            }
        }
    }
    Ok(())
}

/// Ok(true) = verified, Ok(false) = solution rejected (exit 2).
fn run_verify(args: VerifyArgs) -> Result<bool> {
    let game = load_srg(&args.input)?.validate()?;
    let ledger = ComparisonLedger::new();
    let verdict = match args.mode {
        SrgMode::Strong | SrgMode::Sign => {
            let sol = sorting_method(&game, &ledger)?;
            verify_strong(&game, &sol)?
        }
        SrgMode::Weak => {
            let v0 = pick_v0(&game, args.v0)?;
            let algo = match args.algo {
                SrgAlgo::Sort | SrgAlgo::Paterson => WeakAlgo::Paterson,
                SrgAlgo::Loglog => WeakAlgo::LogLog,
                SrgAlgo::Logstar => WeakAlgo::LogStar,
            };
            let out = solve_weak(&game, v0, algo, &ledger)?;
            verify_weak(&game, &out.solution)?
        }
    };
    match verdict {
        Verdict::Pass => {
            println!("verified: pass");
            Ok(true)
        }
        Verdict::Fail(violation) => {
            println!("verified: FAIL ({violation:?})");
            Ok(false)
        }
    }
}

fn run_reduce(input: PathBuf, out: PathBuf) -> Result<()> {
    let game = load_srg(&input)?.validate()?;
    let (net, map) = reduce_srg_to_interdiction(&game)?;
    save_network(&net, &out)?;
    for v in game.vertex_ids() {
        println!("game vertex {v} -> network vertex {}", map[v].unwrap());
    }
    println!("supersink = {}", net.sink());
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<()> {
    let algos: Vec<String> = args.algos.split(',').map(|s| s.trim().to_string()).collect();
    let sizes: Vec<usize> = parse_list(&args.sizes, "--sizes")?;
    let seeds: Vec<u64> = parse_list(&args.seeds, "--seeds")?;
    let rows = match args.kind {
        OracleKind::Srg => bench_srg(&algos, &sizes, &seeds)?,
        OracleKind::Net => bench_net(&algos, &sizes, &seeds)?,
    };
    write_or_print(&args.out, &to_csv(&rows))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(args) => run_gen(args).map(|()| true),
        Command::SolveSrg(args) => run_solve_srg(args).map(|()| true),
        Command::SolveNet(args) => run_solve_net(args).map(|()| true),
        Command::Oracle { input, kind } => run_oracle(input, kind).map(|()| true),
        Command::Verify(args) => run_verify(args),
        Command::Reduce { input, out } => run_reduce(input, out).map(|()| true),
        Command::Bench(args) => run_bench(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
