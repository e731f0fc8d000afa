//! `ranklab` — scoring, axiom checking, Kemeny medians, monotone extensions,
//! and profile generation over paired-comparison profiles.
//!
//! Exit codes: 0 success, 1 violations found by `check`, 2 validation error,
//! 3 solver failure, 4 external-procedure protocol error.

mod commands;
mod external;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ranklab", version, about = "Preference-aggregation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a profile with a named method.
    Score(commands::ScoreArgs),
    /// Evaluate the implicit-system left-hand sides at given scores.
    Residual(commands::ResidualArgs),
    /// Fuzz an axiom against a procedure and report violations.
    Check(commands::CheckArgs),
    /// Exhaustive Kemeny medians of a profile.
    Kemeny(commands::KemenyArgs),
    /// Choice set of a profile under a method (or closeness to unanimity).
    Choice(commands::ChoiceArgs),
    /// Evaluate the monotone extension of a Paretian set at query points.
    Extend(commands::ExtendArgs),
    /// Generate seeded random profiles as JSON lines.
    Generate(commands::GenerateArgs),
    /// Run two methods on one profile and compare scores and rankings.
    Compare(commands::CompareArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Score(args) => commands::score(args),
        Command::Residual(args) => commands::residual(args),
        Command::Check(args) => commands::check(args),
        Command::Kemeny(args) => commands::kemeny(args),
        Command::Choice(args) => commands::choice(args),
        Command::Extend(args) => commands::extend(args),
        Command::Generate(args) => commands::generate(args),
        Command::Compare(args) => commands::compare(args),
    };
    match result {
        Ok(()) => {}
        Err(err) => {
            eprintln!("{}", err.to_json());
            std::process::exit(err.exit_code);
        }
    }
}
