use std::process::ExitCode;

use clap::Parser;
use wlgroup_cli::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match wlgroup_cli::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if cli.global.json {
                let v = serde_json::json!({ "schema": "wlgroup.error/1", "code": e.code, "kind": e.kind, "message": e.message });
                eprintln!("{v}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code)
        }
    }
}
