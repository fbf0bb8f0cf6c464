use thiserror::Error;

use crate::game::VertexId;

/// Errors shared by the game model, the solvers, and the oracles.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-terminal vertex {0} has no outgoing arcs")]
    NonTerminalWithoutMoves(VertexId),
    #[error("terminal vertex {0} has an outgoing arc")]
    TerminalWithOutgoingArc(VertexId),
    #[error("arc ({tail}, {head}) references a missing vertex")]
    DanglingArc { tail: VertexId, head: VertexId },
    #[error("vertex {0} has a non-finite payoff")]
    NonFinitePayoff(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {0} has the wrong role for this operation")]
    WrongRole(VertexId),
    #[error("operation needs two distinct vertices, got {0} twice")]
    SameVertex(VertexId),
    #[error("group {group} mixes payoff signs")]
    GroupNotSignHomogeneous { group: usize },
    #[error("group {group} is not a contiguous block of the payoff order")]
    GroupNotContiguous { group: usize },
    #[error("no value supplied for vertex {0}")]
    MissingValue(VertexId),
    #[error("order is not a permutation of the expected id set")]
    BadPermutation,
    #[error("input is empty")]
    EmptyInput,
    #[error("supplied value is inconsistent with the game (detected at vertex {vertex})")]
    InconsistentInputValue { vertex: VertexId },
    #[error("strategy does not cover vertex {vertex}")]
    IncompleteStrategy { vertex: VertexId },
    #[error("instance too large to enumerate: {size} profiles exceed cap {cap}")]
    InstanceTooLarge { size: u128, cap: u128 },
    #[error("payoff of terminal {0} is not strictly positive")]
    NonPositivePayoff(VertexId),
    #[error("arc {0} has a non-positive or non-finite capacity")]
    InvalidCapacity(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
