use std::process;

use clap::Parser;
use coauthnet_cli::{run, Cli, ExitCode};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Usage } else { ExitCode::Success };
            let _ = e.print();
            process::exit(code as i32);
        }
    };
    if let Err(e) = run(&cli.command) {
        eprintln!("error: {e}");
        process::exit(e.code as i32);
    }
}
