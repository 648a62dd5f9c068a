use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use wallach_cli::{run, Cli, CliError};

fn fail(e: &CliError) -> ExitCode {
    let report = json!({ "error": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() });
    eprintln!("{report}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cfg, out) = match run(&cli) {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    let text = match out.render(cfg.format) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&CliError::Io(e)),
    }
}
