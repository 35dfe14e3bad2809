//! Front end for `equimap`: the instance language, command dispatch and
//! reports.

pub mod commands;
pub mod parse;
pub mod report;

pub use commands::{run, CliError, Command, Flags};
pub use parse::{parse_spec, render, ParseError, ProblemInstance};
pub use report::Report;
