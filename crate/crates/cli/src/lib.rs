//! JSON workspaces and the `enriched` command line.

pub mod commands;
pub mod error;
pub mod workspace;

pub use commands::{run, Cli, Format, Report};
pub use error::{CliError, CliResult};
pub use workspace::{parse_document, parse_workspace, Document, Workspace};
