mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Global;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let global = Global {
        quiet: cli.quiet,
        report: cli.report.as_deref(),
        command_echo: std::env::args().collect(),
    };
    let result = match cli.command {
        Command::Simulate(args) => commands::simulate(args, &global),
        Command::Denoise(args) => commands::denoise(args, &global),
        Command::Compound(args) => commands::compound(args, &global),
        Command::EstimateNoise(args) => commands::estimate_noise(args, &global),
        Command::Evaluate(args) => commands::evaluate(args, &global),
        Command::Spectrum(args) => commands::spectrum(args, &global),
        Command::FaultFreqs(args) => commands::fault_freqs(args, &global),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
