mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match commands::run(&cli) {
        Ok(report) => {
            println!("{}", report.render(cli.pretty, !cli.no_timings));
            ExitCode::SUCCESS
        }
        Err(failure) => {
            println!("{}", failure.render(name, cli.pretty));
            eprintln!("pairloc {name}: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
