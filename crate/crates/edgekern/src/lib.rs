//! File formats, generators, verification harness and command line for the
//! kernels in `edgekern-core`.

pub mod cli;
pub mod generate;
pub mod harness;
pub mod io;
pub mod report;

pub use edgekern_core as core;
