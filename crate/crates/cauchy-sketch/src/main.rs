use std::process::ExitCode;

use cauchy_sketch::cli::CliConfig;
use clap::Parser;

fn main() -> ExitCode {
    let cfg = CliConfig::parse();
    match cauchy_sketch::run(&cfg, &mut std::io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
