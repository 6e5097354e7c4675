//! Command line front end: problem files in, exact answers out.
//!
//! The binary exposes four subcommands. `analyze` prints win probabilities
//! and waiting times, `series` expands the occurrence distributions,
//! `verify` cross-checks every identity the solver relies on, and
//! `simulate` races a seeded Monte Carlo run against the exact answers.

pub mod commands;
pub mod decimal;
pub mod machine;
pub mod problem;

mod error;

pub use commands::{run, Cli, Command, OutputFormat, RunOutcome};
pub use error::CliError;
pub use problem::ProblemFile;
