//! File formats, structured reports and the commands behind the `tmon` binary.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{CliError, Outcome};
pub use format::{parse, ParseError, Source};
