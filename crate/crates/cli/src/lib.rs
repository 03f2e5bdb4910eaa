//! Front end for the `hopfore` library: instance files, module
//! expressions and report rendering.

pub mod commands;
pub mod config;
pub mod error;
pub mod expr;
pub mod report;

pub use commands::{run, Command, Options};
pub use config::InstanceConfig;
pub use error::{CliError, CliResult};
pub use report::Report;
