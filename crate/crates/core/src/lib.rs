//! Solver toolkit for simple recursive games and widest-path interdiction.
//!
//! Simple recursive games are two-player zero-sum perfect-information games
//! on digraphs: Max and Min steer a token along arcs, terminals pay Min to
//! Max, infinite play pays 0. The crate provides:
//!
//! - the game model and its structural transformations ([`game`]),
//! - retrograde analysis: strong solving from sorted payoffs, the sorting
//!   method, and the linear-time sign solver ([`retrograde`]),
//! - strategy recovery from known values ([`recovery`]),
//! - comparison-budgeted selection/partitioning kernels ([`order`]),
//! - three weak solvers trading comparisons against time ([`weak`]),
//! - widest-path interdiction with removal budgets ([`interdiction`]),
//! - brute-force oracles and verifiers for desk-scale instances
//!   ([`oracle`]).
//!
//! Every payoff/capacity comparison is routed through a
//! [`ledger::ComparisonLedger`], so the comparison complexity of each
//! algorithm is observable and tested, separately from running time.

pub mod error;
pub mod game;
pub mod interdiction;
pub mod ledger;
pub mod oracle;
pub mod order;
pub mod recovery;
pub mod retrograde;
pub mod weak;

pub use error::{Error, Result};
pub use game::{Arc, Player, Sign, Solution, Srg, StrategyPair, VertexId, VertexKind, WeakSolution};
pub use interdiction::{NetArc, Network, WidthRun, WidthSolution};
pub use ledger::{ComparisonLedger, Key};
pub use weak::{WeakAlgo, WeakOutcome, WeakRun};
