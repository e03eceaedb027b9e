use std::process::ExitCode;

use clap::Parser;
use unionpid::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("unionpid: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
