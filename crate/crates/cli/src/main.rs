use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = opmeans_cli::commands::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    ExitCode::from(opmeans_cli::commands::run(cli, &mut stdout, &mut stderr))
}
