use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hyperbilliard_cli::{run, Cli, EXIT_ERROR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let written = match &outcome.out {
        Some(path) => std::fs::write(path, &outcome.output)
            .map_err(|e| format!("writing {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(outcome.output.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_ERROR as u8);
    }
    if outcome.code != 0 {
        eprintln!("warning: trajectory stopped early; output is partial");
    }
    ExitCode::from(outcome.code as u8)
}
