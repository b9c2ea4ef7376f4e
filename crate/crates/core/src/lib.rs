//! Kernelization for parameterized edge-modification problems on graphs:
//! Clique+IS Deletion, Split Addition and Deletion, Trivially Perfect Addition
//! and Starforest Deletion.
//!
//! The crate is `no_std` (it needs `alloc`). It holds the graph type, class
//! recognizers, the reduction rules with replayable traces, and exact solvers
//! used as ground truth.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod clique;
pub mod error;
pub mod graph;
pub mod kernel;
pub mod oracle;
pub mod problem;
pub mod recognize;
pub mod trace;

pub use error::{GraphError, OracleError};
pub use graph::{canonical, Edge, EdgeSet, EditMode, Graph};
pub use kernel::{kernelize, CliqueIsConfig};
pub use oracle::{generic_solve, solve_exact};
pub use problem::{Decision, Problem, ProblemInstance};
pub use recognize::{find_obstruction, is_member, GraphClass, Obstruction, ObstructionKind};
pub use trace::{KernelOutcome, KernelResult, ReductionTrace, Rule};
