//! `pml`: evaluate measures, run the sequence oracle, check threshold
//! entailment, export the entailment surface and test tautologies.
//!
//! Exit codes: 0 ok, 1 soundness violation, 2 parse or usage error,
//! 3 invalid weights, 4 unknown atom, 5 cap exceeded, 6 I/O failure.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CliError, WeightsSource};

#[derive(Parser, Debug)]
#[command(name = "pml", version, about = "Propositional measure logic")]
struct Cli {
    /// JSON weights file, or `uniform` over the standard collection of the formula's atoms.
    #[arg(long, global = true, default_value = "uniform")]
    weights: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Maximum number of sequences the oracle may enumerate.
    #[arg(long, global = true, default_value_t = pml_core::sequence::ENUMERATION_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Measure of one or more formulas, by the compositional evaluator.
    Eval {
        #[arg(required = true)]
        formulas: Vec<String>,
        /// Print the nearest double instead of the exact rational.
        #[arg(long)]
        float: bool,
    },
    /// Measure by enumerating associated sequences, with counts.
    Oracle {
        formula: String,
        /// List the justifying leaf tuples (only for up to 256 associated sequences).
        #[arg(long)]
        list: bool,
    },
    /// Threshold modus ponens: measures of P, P -> Q and Q against k.
    Entail {
        #[arg(short = 'P', long = "premise")]
        premise: String,
        #[arg(short = 'Q', long = "conclusion")]
        conclusion: String,
        #[arg(short = 'k', long = "threshold")]
        threshold: String,
    },
    /// Export the modus ponens surface q(p, c) on a uniform grid.
    Surface {
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tautology verdict and soundness report.
    Check { formula: String },
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    let weights = WeightsSource::from_arg(&cli.weights);
    let format = cli.format;
    match cli.command {
        Command::Eval { formulas, float } => commands::eval(&formulas, &weights, format, float).map(|s| (s, 0)),
        Command::Oracle { formula, list } => {
            commands::oracle(&formula, &weights, format, cli.cap, list).map(|s| (s, 0))
        }
        Command::Entail { premise, conclusion, threshold } => {
            commands::entail(&premise, &conclusion, &threshold, &weights, format).map(|s| (s, 0))
        }
        Command::Surface { steps, out } => commands::surface(steps, out.as_deref(), format).map(|s| (s, 0)),
        Command::Check { formula } => commands::check(&formula, &weights, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(output.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(6);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("pml: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
