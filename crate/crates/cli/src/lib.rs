//! The `ihall` command: argument parsing, dispatch to the engine and
//! rendering of exact results and verification reports.
//!
//! Everything runs in-process through [`run`], so tests can drive the
//! command without spawning it. Exit codes: 0 when every check passes,
//! 1 on a failed check, 2 on bad input, 3 when a budget is exceeded.

mod commands;
pub mod element;
mod error;
pub mod expr;

pub use commands::{run, Outcome};
pub use error::CliError;
