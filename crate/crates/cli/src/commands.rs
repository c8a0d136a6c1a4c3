//! Command implementations. Each returns the exact text to print on
//! standard output; outputs are deterministic for identical inputs.

use num_bigint::BigUint;
use serde::Serialize;

use recount::closure::{self, compile_regex, parse_regex, ClosureError};
use recount::density::{self, estimate_growth, DensityError, DEFAULT_GROWTH_WINDOW};
use recount::language::LanguageError;
use recount::semiring::words::{Alphabet, AlphabetError, Word};

use crate::documents::{AutomatonDocument, DocumentError, ParsedSystem, RecurrenceDocument};

/// A failed command: a message for standard error and a process exit code
/// (1 validation, 2 parse, 3 resource guard).
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> CliError {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<LanguageError> for CliError {
    fn from(error: LanguageError) -> CliError {
        let code = match error {
            LanguageError::WordLimit { .. }
            | LanguageError::StateGuard { .. }
            | LanguageError::SubsetLimit { .. } => 3,
            _ => 1,
        };
        CliError {
            code,
            message: error.to_string(),
        }
    }
}

impl From<DensityError> for CliError {
    fn from(error: DensityError) -> CliError {
        match error {
            DensityError::Language(inner) => inner.into(),
            other => CliError::validation(other.to_string()),
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(error: DocumentError) -> CliError {
        match error {
            DocumentError::Language(inner) => inner.into(),
            other => CliError::validation(other.to_string()),
        }
    }
}

impl From<ClosureError> for CliError {
    fn from(error: ClosureError) -> CliError {
        CliError::validation(error.to_string())
    }
}

impl From<AlphabetError> for CliError {
    fn from(error: AlphabetError) -> CliError {
        CliError::validation(error.to_string())
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    text
}

/// The empty word prints as `&` so that the n = 0 cross-section is visible.
fn render_word(alphabet: &Alphabet, word: &Word) -> String {
    if word.is_empty() {
        "&".to_string()
    } else {
        alphabet.render(word)
    }
}

pub fn cmd_compile(alphabet_text: &str, regex: &str) -> Result<String, CliError> {
    let alphabet: Alphabet = alphabet_text.parse()?;
    let ast = parse_regex(regex).map_err(|e| CliError::parse(e.to_string()))?;
    let automaton = compile_regex(&ast, &alphabet)?;
    Ok(to_json(&AutomatonDocument::from_automaton(&automaton)))
}

pub fn cmd_cross_section(
    document: &AutomatonDocument,
    n: usize,
    max_words: usize,
) -> Result<String, CliError> {
    let automaton = document.to_automaton()?;
    let section = automaton.cross_section_bounded(n, max_words)?;
    let mut out = String::new();
    for word in section.words().words() {
        out.push_str(&render_word(automaton.alphabet(), word));
        out.push('\n');
    }
    Ok(out)
}

pub fn cmd_enumerate(
    document: &AutomatonDocument,
    max_n: usize,
    max_words: usize,
) -> Result<String, CliError> {
    let automaton = document.to_automaton()?;
    let sections = automaton.enumerate_up_to_bounded(max_n, max_words)?;
    let mut out = String::new();
    for section in sections {
        out.push_str(&format!("# n={}\n", section.n()));
        for word in section.words().words() {
            out.push_str(&render_word(automaton.alphabet(), word));
            out.push('\n');
        }
    }
    Ok(out)
}

pub fn cmd_member(document: &AutomatonDocument, word_text: &str) -> Result<String, CliError> {
    let automaton = document.to_automaton()?;
    let word = if word_text == "&" || word_text.is_empty() {
        Word::empty()
    } else {
        automaton.alphabet().word(word_text)?
    };
    Ok(format!("{}\n", automaton.member(&word)?))
}

/// Output of the density command: the table for standard output and an
/// optional determinization notice for standard error.
pub struct DensityOutput {
    pub stdout: String,
    pub notice: Option<String>,
}

pub fn cmd_density(
    document: &AutomatonDocument,
    max_n: usize,
    matrix_power: bool,
    classify: bool,
) -> Result<DensityOutput, CliError> {
    let automaton = document.to_automaton()?;
    let (machine, notice) = if automaton.is_deterministic() {
        (automaton, None)
    } else {
        let deterministic = automaton.determinize()?;
        (
            deterministic,
            Some(
                "note: input automaton is nondeterministic; densities computed on its \
                 determinization"
                    .to_string(),
            ),
        )
    };
    let system = density::density_system(&machine).expect("machine is deterministic");
    let prefix: Vec<BigUint> = if matrix_power {
        (0..=max_n).map(|n| system.value_at(n)).collect()
    } else {
        system.prefix(max_n)
    };

    let mut stdout = String::new();
    for (n, value) in prefix.iter().enumerate() {
        stdout.push_str(&format!("{n}\t{value}\n"));
    }
    if classify {
        let window = DEFAULT_GROWTH_WINDOW.min(prefix.len().saturating_sub(4) / 2);
        if window == 0 {
            return Err(CliError::validation(
                "density prefix too short to classify; increase N",
            ));
        }
        let class = estimate_growth(&prefix, window).expect("window fits the prefix");
        stdout.push_str(&format!("class: {class} (heuristic)\n"));
    }
    Ok(DensityOutput { stdout, notice })
}

pub fn cmd_paths(document: &AutomatonDocument, n: usize) -> Result<String, CliError> {
    let automaton = document.to_automaton()?;
    let count = density::path_counting(&automaton.to_counting()).count_at(n);
    Ok(format!("{count}\n"))
}

pub fn cmd_union(a: &AutomatonDocument, b: &AutomatonDocument) -> Result<String, CliError> {
    let merged = closure::union(&a.to_automaton()?, &b.to_automaton()?)?;
    Ok(to_json(&AutomatonDocument::from_automaton(&merged)))
}

pub fn cmd_concat(a: &AutomatonDocument, b: &AutomatonDocument) -> Result<String, CliError> {
    let chained = closure::concat(&a.to_automaton()?, &b.to_automaton()?)?;
    Ok(to_json(&AutomatonDocument::from_automaton(&chained)))
}

pub fn cmd_star(a: &AutomatonDocument) -> Result<String, CliError> {
    let starred = closure::star(&a.to_automaton()?);
    Ok(to_json(&AutomatonDocument::from_automaton(&starred)))
}

pub fn cmd_determinize(document: &AutomatonDocument) -> Result<String, CliError> {
    let deterministic = document.to_automaton()?.determinize()?;
    Ok(to_json(&AutomatonDocument::from_automaton(&deterministic)))
}

pub fn cmd_grammar(document: &AutomatonDocument) -> Result<String, CliError> {
    Ok(document.to_automaton()?.to_grammar().to_text())
}

pub fn cmd_recurrence(document: &AutomatonDocument) -> Result<String, CliError> {
    let automaton = document.to_automaton()?;
    let system = automaton.to_counting().to_recurrence();
    Ok(to_json(&RecurrenceDocument::from_letters(
        automaton.alphabet(),
        &system,
    )))
}

pub fn cmd_reduce(document: &RecurrenceDocument) -> Result<String, CliError> {
    let reduced = match document.to_system()? {
        ParsedSystem::Naturals(system) => {
            let (first_order, _) = system.reduce_to_first_order();
            RecurrenceDocument::from_naturals(&first_order)
        }
        ParsedSystem::Letters(alphabet, system) => {
            let (first_order, _) = system.reduce_to_first_order();
            RecurrenceDocument::from_letters(&alphabet, &first_order)
        }
    };
    Ok(to_json(&reduced))
}
