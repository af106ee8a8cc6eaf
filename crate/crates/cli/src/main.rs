mod bench;
mod commands;
mod generate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit statuses shared by every subcommand.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INFEASIBLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;

const EXIT_CODES: &str = "Exit codes:
  0  success (solution found, action verified, command completed)
  1  infeasible: no successful action within the budget, or the action fails
  2  usage error: bad arguments, unreadable or invalid input, unsupported rule or prices
  3  capacity: the instance is too large for the chosen algorithm";

#[derive(Parser, Debug)]
#[command(name = "shiftbribery", version, about = "Shift Bribery solvers for Borda, Maximin and Copeland elections", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance with one algorithm.
    Solve(SolveArgs),
    /// Shrink a Borda or Maximin instance to a kernel for at most t unit shifts.
    Kernelize(KernelizeArgs),
    /// Report which price families an instance's price functions belong to.
    Classify(ClassifyArgs),
    /// Write an instance built by one of the standard constructions.
    Generate(generate::GenerateArgs),
    /// Recheck a shift action: success and cost.
    Verify(VerifyArgs),
    /// Run a solver matrix from a suite file and print CSV.
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Bruteforce,
    FptShifts,
    Aon,
    XpFlow,
    Greedy,
    FptasVoters,
    FptasCandidates,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleName {
    Borda,
    Maximin,
    Copeland,
}

/// Rule selection; overrides the rule line of the instance file.
#[derive(Args, Debug, Clone, Default)]
pub struct RuleArgs {
    #[arg(long, value_enum)]
    pub rule: Option<RuleName>,
    /// Copeland tie value as p/q.
    #[arg(long)]
    pub alpha: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Most unit shifts (fpt-shifts, bruteforce).
    #[arg(long)]
    pub t: Option<usize>,
    /// Approximation parameter as p/q (fptas-voters, fptas-candidates).
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Replaces the budget of the instance file.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Most voters with a nonzero shift (bruteforce).
    #[arg(long)]
    pub max_affected: Option<usize>,
    #[arg(short, long)]
    pub input: PathBuf,
    /// Print the result document as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct KernelizeArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    #[arg(long)]
    pub t: usize,
    /// Replaces the budget of the instance file.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Build the kernel even when the input is already small.
    #[arg(long)]
    pub force: bool,
    #[arg(short, long)]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    #[arg(short, long)]
    pub input: PathBuf,
    /// Comma-separated shift per voter.
    #[arg(long, allow_hyphen_values = true)]
    pub action: String,
    #[arg(long)]
    pub json: bool,
}

/// A command failure with the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<shiftbribery::Error> for Failure {
    fn from(e: shiftbribery::Error) -> Failure {
        let code = if e.is_capacity() { EXIT_CAPACITY } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let outcome = match cli.command {
        Command::Solve(a) => commands::solve(&a),
        Command::Kernelize(a) => commands::kernelize(&a),
        Command::Classify(a) => commands::classify(&a),
        Command::Generate(a) => generate::run(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Bench(a) => bench::run(&a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
