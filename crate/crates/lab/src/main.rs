use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use cslab::cli::{execute, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match execute(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    };
    ExitCode::from(code as u8)
}
