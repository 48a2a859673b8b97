//! Library side of the `pdm` command: configuration layering, named
//! potential families, the embedded reference tables and the report format.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod families;
pub mod format;
pub mod reference;
pub mod report;

pub use cli::Cli;
pub use commands::{reproduce, run};
pub use error::{CliError, CliResult};
pub use report::TableReport;
