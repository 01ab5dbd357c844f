use std::process::ExitCode;

use clap::Parser;
use sta::cli::{parse_config, run_command, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    let result =
        parse_config(&args).and_then(|config| run_command(&config, &mut std::io::stdout().lock()));
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
