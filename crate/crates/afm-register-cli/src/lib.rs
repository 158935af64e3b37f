//! Command layer for the `afmreg` binary: configuration, result tables, output.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

pub use commands::{cmd_afr, cmd_concurrence, cmd_coupling, cmd_decoherence, par_map, run, selfcheck, Check};
pub use config::{Format, RunConfig};
pub use error::{CliError, CliResult};
pub use table::{format_float, Cell, Table};

/// Runs `command` and renders the table in the configured format.
pub fn render(command: &str, cfg: &RunConfig) -> CliResult<String> {
    let table = run(command, cfg)?;
    Ok(table.render(cfg.format, &cfg.resolved_json()))
}
