//! Configuration, command dispatch and reports for the `tmodl` binary.

pub mod config;
pub mod expr;
pub mod run;

pub use config::{parse_config, Context, ExtensionChoice, Format, ModuleChoice, RunConfig};
pub use run::{apply_overrides, error_code, execute, run, Overrides, Report, Status, COMMANDS};
