//! `rowadj`: build and analyze row-adjusted meet and join matrices.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Parser)]
#[command(name = "rowadj", version, about = "Exact row-adjusted meet and join matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the row-adjusted (or column-adjusted) matrix.
    Matrix(InputArgs),
    /// Rank bounds, determinant and inverse, each checked against elimination.
    Analyze(InputArgs),
    /// Print the minimal closure set of S and its incidence matrix.
    Closure(InputArgs),
    /// Print the Möbius matrix of the closure set of S.
    Mobius(InputArgs),
    /// Run the randomized property suite.
    Verify(VerifyArgs),
}

#[derive(Args, Clone, Debug)]
pub struct InputArgs {
    /// Poset description file.
    #[arg(long, value_name = "FILE", conflicts_with = "divisors", required_unless_present = "divisors")]
    pub poset: Option<PathBuf>,
    /// Use positive integers ordered by divisibility.
    #[arg(long)]
    pub divisors: bool,
    /// Elements of S in order, separated by commas or spaces.
    #[arg(long, value_name = "LIST")]
    pub set: Option<String>,
    /// id | const:<c> | pow:<r> | table:<file>
    #[arg(long, value_name = "SPEC", conflicts_with = "functions")]
    pub family: Option<String>,
    /// Function table file (same as `--family table:<file>`).
    #[arg(long, value_name = "FILE")]
    pub functions: Option<PathBuf>,
    #[arg(long, default_value = "meet", value_parser = ["meet", "join"])]
    pub mode: String,
    /// Print the transpose (entries f_j(x_i ∧ x_j)).
    #[arg(long)]
    pub column_adjusted: bool,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
}

#[derive(Args, Clone, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub cases: u64,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Matrix(a) => commands::run_input(commands::Task::Matrix, &a),
        Command::Analyze(a) => commands::run_input(commands::Task::Analyze, &a),
        Command::Closure(a) => commands::run_input(commands::Task::Closure, &a),
        Command::Mobius(a) => commands::run_input(commands::Task::Mobius, &a),
        Command::Verify(a) => commands::verify(&a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(partial) = &e.output {
                print!("{partial}");
            }
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
