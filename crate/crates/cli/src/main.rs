//! `focusreg`: focus maps, registration, criterion evaluation and digital
//! subtraction of grayscale radiograph pairs.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use focusreg::{Error, ErrorKind};

use config::{Flags, PipelineConfig};

#[derive(Parser)]
#[command(name = "focusreg", version, about = "Focussed mutual information registration and subtraction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a focus map from the reference image and write it with a PGM preview
    Focus(Flags),
    /// Register the test image to the reference and write transform, trace and subtraction
    Register(Flags),
    /// Print MI, NMI and ECC for a given transform
    Evaluate(Flags),
    /// Write the subtraction image for a given transform
    Subtract(Flags),
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Input => 2,
        ErrorKind::Degenerate => 3,
        ErrorKind::Registration => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (flags, run): (Flags, fn(&PipelineConfig) -> focusreg::Result<()>) = match cli.command {
        Command::Focus(f) => (f, commands::focus),
        Command::Register(f) => (f, commands::register),
        Command::Evaluate(f) => (f, commands::evaluate),
        Command::Subtract(f) => (f, commands::subtract_cmd),
    };
    match PipelineConfig::load(flags).and_then(|c| run(&c)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
