//! `recount` — counting automata, recurrence systems, cross-sections, and
//! language densities from the command line.
//!
//! Automaton documents are JSON (see [`documents`]); every command reads
//! them from a file path or from standard input when the path is `-` or
//! omitted. Exit codes: 0 success, 1 validation failure, 2 parse error,
//! 3 resource guard exceeded.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod documents;

use commands::CliError;
use documents::{AutomatonDocument, RecurrenceDocument};

#[derive(Parser)]
#[command(
    name = "recount",
    version,
    about = "Counting automata over letter sets: compile regexes, enumerate cross-sections, \
             export grammars and recurrences, and compute language densities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a regular expression to an automaton document.
    ///
    /// Syntax: letters are alphanumeric, `|` union, juxtaposition
    /// concatenation, postfix `*` star, `!` the empty set, `&` the empty
    /// word, parentheses group.
    Compile {
        /// The alphabet, one character per symbol, e.g. `ab`.
        #[arg(long)]
        alphabet: String,
        regex: String,
    },
    /// Print the words of length N, one per line (`&` is the empty word).
    CrossSection {
        #[arg(default_value = "-")]
        input: String,
        n: usize,
        /// Abort if a sweep holds more than this many words.
        #[arg(long, default_value_t = recount::language::DEFAULT_MAX_WORDS)]
        max_words: usize,
    },
    /// Print every cross-section up to N, under `# n=<length>` headers.
    Enumerate {
        #[arg(default_value = "-")]
        input: String,
        max_n: usize,
        #[arg(long, default_value_t = recount::language::DEFAULT_MAX_WORDS)]
        max_words: usize,
    },
    /// Test whether a word is recognized (`&` for the empty word).
    Member {
        #[arg(default_value = "-")]
        input: String,
        word: String,
    },
    /// Print `n <TAB> ρ(n)` for n = 0..=N, the number of words per length.
    Density {
        #[arg(default_value = "-")]
        input: String,
        max_n: usize,
        /// Evaluate each length by matrix power instead of one sweep.
        #[arg(long)]
        matrix_power: bool,
        /// Append a heuristic growth classification of the sequence.
        #[arg(long)]
        classify: bool,
    },
    /// Print the number of successful paths of length N.
    Paths {
        #[arg(default_value = "-")]
        input: String,
        n: usize,
    },
    /// Combine automata: union, concatenation, or star.
    Ops {
        #[command(subcommand)]
        op: OpsCommand,
    },
    /// Determinize by subset construction.
    Determinize {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Export the right-linear grammar, one production per line.
    Grammar {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Export the recurrence system over letter sets.
    Recurrence {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Reduce a higher-degree recurrence document to first order.
    Reduce {
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(Subcommand)]
enum OpsCommand {
    /// Automaton recognizing L(a) ∪ L(b).
    Union { a: String, b: String },
    /// Automaton recognizing L(a) · L(b).
    Concat { a: String, b: String },
    /// Automaton recognizing L(a)*.
    Star { a: String },
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::validation(format!("cannot read standard input: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read {path}: {e}")))
    }
}

fn load_automaton(path: &str) -> Result<AutomatonDocument, CliError> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("document parse error: {e}")))
}

fn load_recurrence(path: &str) -> Result<RecurrenceDocument, CliError> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("document parse error: {e}")))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Compile { alphabet, regex } => commands::cmd_compile(&alphabet, &regex),
        Command::CrossSection {
            input,
            n,
            max_words,
        } => commands::cmd_cross_section(&load_automaton(&input)?, n, max_words),
        Command::Enumerate {
            input,
            max_n,
            max_words,
        } => commands::cmd_enumerate(&load_automaton(&input)?, max_n, max_words),
        Command::Member { input, word } => commands::cmd_member(&load_automaton(&input)?, &word),
        Command::Density {
            input,
            max_n,
            matrix_power,
            classify,
        } => {
            let output =
                commands::cmd_density(&load_automaton(&input)?, max_n, matrix_power, classify)?;
            if let Some(notice) = output.notice {
                eprintln!("{notice}");
            }
            Ok(output.stdout)
        }
        Command::Paths { input, n } => commands::cmd_paths(&load_automaton(&input)?, n),
        Command::Ops { op } => match op {
            OpsCommand::Union { a, b } => {
                commands::cmd_union(&load_automaton(&a)?, &load_automaton(&b)?)
            }
            OpsCommand::Concat { a, b } => {
                commands::cmd_concat(&load_automaton(&a)?, &load_automaton(&b)?)
            }
            OpsCommand::Star { a } => commands::cmd_star(&load_automaton(&a)?),
        },
        Command::Determinize { input } => commands::cmd_determinize(&load_automaton(&input)?),
        Command::Grammar { input } => commands::cmd_grammar(&load_automaton(&input)?),
        Command::Recurrence { input } => commands::cmd_recurrence(&load_automaton(&input)?),
        Command::Reduce { input } => commands::cmd_reduce(&load_recurrence(&input)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(error) => {
            eprintln!("error: {}", error.message);
            ExitCode::from(error.code)
        }
    }
}
