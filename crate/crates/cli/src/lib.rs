//! Algebra files, JSON reports and the `zinbiel` command line.

pub mod commands;
pub mod file;
pub mod report;

pub use commands::{run_command, EXIT_FINDING, EXIT_INPUT, EXIT_OK};
pub use file::{parse_algebra_file, serialize_algebra, ParseError, ParseErrorKind};
