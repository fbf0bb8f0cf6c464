//! Workbench around the solver crate: seed-deterministic generators, a JSON
//! instance format with DOT export, and a benchmark harness producing CSV.

pub mod bench;
pub mod dot;
pub mod gen;
pub mod io;
pub mod sortnet;
