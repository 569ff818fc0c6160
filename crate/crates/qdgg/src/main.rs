use std::process::ExitCode;

use clap::Parser;
use qdgg::cli::{exit_code, limit_from_env, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = limit_from_env().and_then(|limit| run(cli, limit, &mut std::io::stdout().lock()));
    if let Err(e) = &outcome {
        eprintln!("qdgg: {e}");
    }
    ExitCode::from(exit_code(&outcome))
}
