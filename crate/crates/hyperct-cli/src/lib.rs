//! Command-line surface for the hyperct verification library: argument
//! parsing, run orchestration and JSON report serialization.

pub mod cli;
pub mod report;
pub mod selftest;
pub mod sweep;

pub use cli::{parse_args, render, run, RunConfig};
