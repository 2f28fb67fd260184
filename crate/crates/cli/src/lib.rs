//! Command-line front end for the `wlgroup` library.

pub mod catalog;
pub mod cli;
pub mod commands;
pub mod exit;
pub mod experiment;
pub mod spec;

use cli::{Cli, Command};
use commands::Ctx;
use exit::CliResult;

/// Runs one parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> CliResult<u8> {
    let ctx = Ctx::from_global(&cli.global)?;
    match &cli.command {
        Command::Gen(a) => commands::gen(&ctx, a)?,
        Command::Wl(a) => commands::wl(&ctx, a)?,
        Command::Iso(a) => commands::iso(&ctx, a)?,
        Command::IsoList(a) => commands::iso_list(&ctx, a)?,
        Command::Canon(a) => commands::canon(&ctx, a)?,
        Command::Experiment(a) => {
            return experiment::command(&a.spec, a.out.clone(), a.summary.clone(), cli.global.budget, &ctx.catalog, ctx.json)
        }
    }
    Ok(0)
}
