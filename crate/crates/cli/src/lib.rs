//! Command-line surface for `eppa-core`: the text format, run records and
//! the `eppa` subcommands.

pub mod cli;
pub mod format;
pub mod record;

pub use cli::main_with_args;
