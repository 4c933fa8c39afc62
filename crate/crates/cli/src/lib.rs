//! File formats and the command-line front-end for `cayley-comm-core`.

pub mod args;
pub mod commands;
pub mod dot;
pub mod formats;

pub use commands::{load_graph, run, CliError};
