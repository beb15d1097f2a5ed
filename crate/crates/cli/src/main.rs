//! `onb`: orthonormal Bernstein bases from the command line.

mod args;
mod basis;
mod error;
mod fit;
mod input;
mod output;
mod report;
mod sample;
mod targets;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{BasisCmd, Cli, Command, FitCmd};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Basis(BasisCmd::Eval(a)) => basis::eval(&a),
        Command::Basis(BasisCmd::Coeffs(a)) => basis::coeffs(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Fit(FitCmd::Curve(a)) => fit::curve(&a),
        Command::Fit(FitCmd::Surface(a)) => fit::surface(&a),
        Command::Sample(a) => sample::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
