//! JSON document formats for automata and recurrence systems.
//!
//! An [`AutomatonDocument`] describes a language automaton by state names:
//!
//! ```json
//! {
//!   "alphabet": ["a", "b"],
//!   "states": ["f1", "f2"],
//!   "initial": "f1",
//!   "final": ["f1"],
//!   "transitions": [
//!     { "from": "f1", "to": "f2", "letters": ["a"] },
//!     { "from": "f2", "to": "f1", "letters": ["a"] },
//!     { "from": "f2", "to": "f2", "letters": ["b"] }
//!   ]
//! }
//! ```
//!
//! A [`RecurrenceDocument`] describes a linear recurrence system over the
//! naturals (`"semiring": "naturals"`, integer coefficients) or over letter
//! sets (`"semiring": "letters"`, coefficients as arrays of letters, values
//! spelled `"eps"`, `"empty"`, or arrays of words with `&` for the empty
//! word). Higher-degree systems add `degrees` plus per-function `seeds` in
//! place of `initial`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use recount::language::{LanguageAutomaton, LanguageError};
use recount::recurrence::{
    HigherDegreeEquation, HigherDegreeSystem, RecurrenceError, RecurrenceSystem,
};
use recount::semiring::words::{Alphabet, AlphabetError, Word, WordSet};
use recount::semiring::Semiring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("alphabet entries must be single characters, got {0:?}")]
    AlphabetEntry(String),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("unknown {role} state {name:?}")]
    UnknownState { role: &'static str, name: String },
    #[error("more than one transition record for {from:?} -> {to:?}")]
    DuplicateTransition { from: String, to: String },
    #[error("transition letters must be single characters, got {0:?}")]
    LetterEntry(String),
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error("semiring must be \"naturals\" or \"letters\", got {0:?}")]
    SemiringName(String),
    #[error("expected {expected} for the {role} of function {function}")]
    ValueKind {
        role: &'static str,
        function: usize,
        expected: &'static str,
    },
    #[error("expected {expected} {what}, got {got}")]
    Shape {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("a document with degrees lists seeds instead of initial values")]
    InitialWithDegrees,
    #[error("missing field {0:?}")]
    MissingField(&'static str),
}

fn single_char(entry: &str) -> Option<char> {
    let mut chars = entry.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}

/// Serialized form of a [`LanguageAutomaton`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonDocument {
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub initial: String,
    #[serde(rename = "final")]
    pub finals: Vec<String>,
    pub transitions: Vec<TransitionRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionRecord {
    pub from: String,
    pub to: String,
    pub letters: Vec<String>,
}

impl AutomatonDocument {
    pub fn to_automaton(&self) -> Result<LanguageAutomaton, DocumentError> {
        let mut symbols = Vec::with_capacity(self.alphabet.len());
        for entry in &self.alphabet {
            symbols
                .push(single_char(entry).ok_or_else(|| DocumentError::AlphabetEntry(entry.clone()))?);
        }
        let alphabet = Alphabet::new(symbols)?;

        let state_index = |name: &str, role: &'static str| {
            self.states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| DocumentError::UnknownState {
                    role,
                    name: name.to_string(),
                })
        };
        let initial = state_index(&self.initial, "initial")?;
        let mut finals = vec![false; self.states.len()];
        for name in &self.finals {
            finals[state_index(name, "final")?] = true;
        }

        let k = self.states.len();
        let mut transitions = vec![vec![recount::semiring::words::LetterSet::empty(); k]; k];
        let mut seen = vec![vec![false; k]; k];
        for record in &self.transitions {
            let from = state_index(&record.from, "transition")?;
            let to = state_index(&record.to, "transition")?;
            if seen[from][to] {
                return Err(DocumentError::DuplicateTransition {
                    from: record.from.clone(),
                    to: record.to.clone(),
                });
            }
            seen[from][to] = true;
            let mut cell = recount::semiring::words::LetterSet::empty();
            for entry in &record.letters {
                let symbol =
                    single_char(entry).ok_or_else(|| DocumentError::LetterEntry(entry.clone()))?;
                let letter = alphabet
                    .letter(symbol)
                    .ok_or(AlphabetError::UnknownSymbol(symbol))?;
                cell.insert(letter);
            }
            transitions[from][to] = cell;
        }

        Ok(LanguageAutomaton::new(
            alphabet,
            self.states.clone(),
            initial,
            finals,
            transitions,
        )?)
    }

    pub fn from_automaton(automaton: &LanguageAutomaton) -> AutomatonDocument {
        let alphabet = automaton.alphabet();
        let states = automaton.labels().to_vec();
        let finals = automaton
            .final_states()
            .into_iter()
            .map(|i| states[i].clone())
            .collect();
        let mut transitions = Vec::new();
        for from in 0..automaton.state_count() {
            for to in 0..automaton.state_count() {
                let letters = automaton.letter_set(from, to);
                if letters.is_empty() {
                    continue;
                }
                transitions.push(TransitionRecord {
                    from: states[from].clone(),
                    to: states[to].clone(),
                    letters: letters
                        .letters()
                        .map(|l| alphabet.symbol(l).to_string())
                        .collect(),
                });
            }
        }
        AutomatonDocument {
            alphabet: alphabet.symbols().iter().map(|c| c.to_string()).collect(),
            states,
            initial: automaton.label(automaton.initial_index()).to_string(),
            finals,
            transitions,
        }
    }
}

/// One coefficient, initial value, or seed in a [`RecurrenceDocument`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarValue {
    Number(u64),
    Text(String),
    Words(Vec<String>),
}

/// Serialized form of a (possibly higher-degree) recurrence system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceDocument {
    pub semiring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    pub functions: Vec<String>,
    pub coefficients: Vec<Vec<ScalarValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<ScalarValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<Vec<ScalarValue>>>,
}

/// A parsed recurrence document, tagged by its semiring.
#[derive(Debug)]
pub enum ParsedSystem {
    Naturals(HigherDegreeSystem<BigUint>),
    Letters(Alphabet, HigherDegreeSystem<WordSet>),
}

fn natural_value(
    value: &ScalarValue,
    role: &'static str,
    function: usize,
) -> Result<BigUint, DocumentError> {
    match value {
        ScalarValue::Number(n) => Ok(BigUint::from(*n)),
        ScalarValue::Text(text) if text.chars().all(|c| c.is_ascii_digit()) && !text.is_empty() => {
            Ok(text.parse().expect("digit strings parse"))
        }
        _ => Err(DocumentError::ValueKind {
            role,
            function,
            expected: "an integer",
        }),
    }
}

fn word_set_value(
    value: &ScalarValue,
    alphabet: &Alphabet,
    role: &'static str,
    function: usize,
) -> Result<WordSet, DocumentError> {
    match value {
        ScalarValue::Text(text) if text == "eps" => Ok(WordSet::one()),
        ScalarValue::Text(text) if text == "empty" => Ok(WordSet::zero()),
        ScalarValue::Words(words) => {
            let mut set = WordSet::empty();
            for text in words {
                let word = if text == "&" || text.is_empty() {
                    Word::empty()
                } else {
                    alphabet.word(text)?
                };
                set.extend([word]);
            }
            Ok(set)
        }
        _ => Err(DocumentError::ValueKind {
            role,
            function,
            expected: "\"eps\", \"empty\", or an array of words",
        }),
    }
}

fn encode_natural(value: &BigUint) -> ScalarValue {
    match value.to_u64() {
        Some(n) => ScalarValue::Number(n),
        None => ScalarValue::Text(value.to_string()),
    }
}

fn encode_word_set(value: &WordSet, alphabet: &Alphabet) -> ScalarValue {
    if value.is_zero() {
        ScalarValue::Text("empty".to_string())
    } else if *value == WordSet::one() {
        ScalarValue::Text("eps".to_string())
    } else {
        ScalarValue::Words(
            value
                .words()
                .map(|w| {
                    if w.is_empty() {
                        "&".to_string()
                    } else {
                        alphabet.render(w)
                    }
                })
                .collect(),
        )
    }
}

impl RecurrenceDocument {
    /// Interprets the document as a higher-degree system (degree 1
    /// everywhere when no `degrees` field is present).
    pub fn to_system(&self) -> Result<ParsedSystem, DocumentError> {
        let k = self.functions.len();
        if self.coefficients.len() != k {
            return Err(DocumentError::Shape {
                what: "coefficient rows",
                expected: k,
                got: self.coefficients.len(),
            });
        }
        for row in &self.coefficients {
            if row.len() != k {
                return Err(DocumentError::Shape {
                    what: "entries in a coefficient row",
                    expected: k,
                    got: row.len(),
                });
            }
        }

        let degrees = match &self.degrees {
            Some(degrees) => {
                if degrees.len() != k {
                    return Err(DocumentError::Shape {
                        what: "degrees",
                        expected: k,
                        got: degrees.len(),
                    });
                }
                if self.initial.is_some() {
                    return Err(DocumentError::InitialWithDegrees);
                }
                degrees.clone()
            }
            None => vec![1; k],
        };

        // Seed lists per function: from `seeds` when present, otherwise one
        // seed per function from `initial`.
        let seed_lists: Vec<Vec<ScalarValue>> = match (&self.seeds, &self.initial) {
            (Some(seeds), _) => {
                if seeds.len() != k {
                    return Err(DocumentError::Shape {
                        what: "seed lists",
                        expected: k,
                        got: seeds.len(),
                    });
                }
                seeds.clone()
            }
            (None, Some(initial)) => {
                if initial.len() != k {
                    return Err(DocumentError::Shape {
                        what: "initial values",
                        expected: k,
                        got: initial.len(),
                    });
                }
                initial.iter().map(|v| vec![v.clone()]).collect()
            }
            (None, None) => return Err(DocumentError::MissingField("initial")),
        };

        match self.semiring.as_str() {
            "naturals" => {
                let mut equations = Vec::with_capacity(k);
                for i in 0..k {
                    let coefficients = self.coefficients[i]
                        .iter()
                        .map(|v| natural_value(v, "coefficients", i))
                        .collect::<Result<_, _>>()?;
                    let seeds = seed_lists[i]
                        .iter()
                        .map(|v| natural_value(v, "seeds", i))
                        .collect::<Result<_, _>>()?;
                    equations.push(HigherDegreeEquation {
                        degree: degrees[i],
                        coefficients,
                        seeds,
                    });
                }
                Ok(ParsedSystem::Naturals(HigherDegreeSystem::new(
                    self.functions.clone(),
                    equations,
                )?))
            }
            "letters" => {
                let alphabet = match &self.alphabet {
                    Some(entries) => {
                        let mut symbols = Vec::with_capacity(entries.len());
                        for entry in entries {
                            symbols.push(
                                single_char(entry)
                                    .ok_or_else(|| DocumentError::AlphabetEntry(entry.clone()))?,
                            );
                        }
                        Alphabet::new(symbols)?
                    }
                    None => self.inferred_alphabet()?,
                };
                let mut equations = Vec::with_capacity(k);
                for i in 0..k {
                    let coefficients = self.coefficients[i]
                        .iter()
                        .map(|v| word_set_value(v, &alphabet, "coefficients", i))
                        .collect::<Result<_, _>>()?;
                    let seeds = seed_lists[i]
                        .iter()
                        .map(|v| word_set_value(v, &alphabet, "seeds", i))
                        .collect::<Result<_, _>>()?;
                    equations.push(HigherDegreeEquation {
                        degree: degrees[i],
                        coefficients,
                        seeds,
                    });
                }
                Ok(ParsedSystem::Letters(
                    alphabet,
                    HigherDegreeSystem::new(self.functions.clone(), equations)?,
                ))
            }
            other => Err(DocumentError::SemiringName(other.to_string())),
        }
    }

    /// Alphabet for a letters document without an explicit one: all
    /// mentioned symbols, sorted.
    fn inferred_alphabet(&self) -> Result<Alphabet, DocumentError> {
        let mut symbols = Vec::new();
        let mut collect = |value: &ScalarValue| {
            if let ScalarValue::Words(words) = value {
                for word in words {
                    if word != "&" {
                        symbols.extend(word.chars());
                    }
                }
            }
        };
        for row in &self.coefficients {
            row.iter().for_each(&mut collect);
        }
        if let Some(initial) = &self.initial {
            initial.iter().for_each(&mut collect);
        }
        if let Some(seeds) = &self.seeds {
            for list in seeds {
                list.iter().for_each(&mut collect);
            }
        }
        symbols.sort_unstable();
        symbols.dedup();
        Ok(Alphabet::new(symbols)?)
    }

    pub fn from_naturals(system: &RecurrenceSystem<BigUint>) -> RecurrenceDocument {
        RecurrenceDocument {
            semiring: "naturals".to_string(),
            alphabet: None,
            functions: system.labels().to_vec(),
            coefficients: system
                .coefficients()
                .iter()
                .map(|row| row.iter().map(encode_natural).collect())
                .collect(),
            initial: Some(system.initial_values().iter().map(encode_natural).collect()),
            degrees: None,
            seeds: None,
        }
    }

    pub fn from_letters(
        alphabet: &Alphabet,
        system: &RecurrenceSystem<WordSet>,
    ) -> RecurrenceDocument {
        RecurrenceDocument {
            semiring: "letters".to_string(),
            alphabet: Some(alphabet.symbols().iter().map(|c| c.to_string()).collect()),
            functions: system.labels().to_vec(),
            coefficients: system
                .coefficients()
                .iter()
                .map(|row| row.iter().map(|v| encode_word_set(v, alphabet)).collect())
                .collect(),
            initial: Some(
                system
                    .initial_values()
                    .iter()
                    .map(|v| encode_word_set(v, alphabet))
                    .collect(),
            ),
            degrees: None,
            seeds: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star_document() -> AutomatonDocument {
        serde_json::from_str(
            r#"{
                "alphabet": ["a", "b"],
                "states": ["f1", "f2"],
                "initial": "f1",
                "final": ["f1"],
                "transitions": [
                    { "from": "f1", "to": "f2", "letters": ["a"] },
                    { "from": "f2", "to": "f1", "letters": ["a"] },
                    { "from": "f2", "to": "f2", "letters": ["b"] }
                ]
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn automaton_document_round_trips() {
        let document = star_document();
        let automaton = document.to_automaton().unwrap();
        assert_eq!(automaton.labels(), &["f1", "f2"]);
        assert!(automaton.is_final(0));
        let back = AutomatonDocument::from_automaton(&automaton);
        assert_eq!(back, document);
        assert_eq!(back.to_automaton().unwrap(), automaton);
    }

    #[test]
    fn unknown_states_are_reported() {
        let mut document = star_document();
        document.initial = "nope".to_string();
        assert!(matches!(
            document.to_automaton().unwrap_err(),
            DocumentError::UnknownState { role: "initial", .. }
        ));
    }

    #[test]
    fn duplicate_transition_records_are_rejected() {
        let mut document = star_document();
        document.transitions.push(TransitionRecord {
            from: "f1".to_string(),
            to: "f2".to_string(),
            letters: vec!["b".to_string()],
        });
        assert!(matches!(
            document.to_automaton().unwrap_err(),
            DocumentError::DuplicateTransition { .. }
        ));
    }

    #[test]
    fn letters_outside_the_alphabet_are_rejected() {
        let mut document = star_document();
        document.transitions[0].letters = vec!["c".to_string()];
        assert_eq!(
            document.to_automaton().unwrap_err(),
            DocumentError::Alphabet(AlphabetError::UnknownSymbol('c'))
        );
    }

    #[test]
    fn naturals_recurrence_round_trips() {
        let document: RecurrenceDocument = serde_json::from_str(
            r#"{
                "semiring": "naturals",
                "functions": ["f1", "f2"],
                "coefficients": [[0, 1], [1, 1]],
                "initial": [1, 0]
            }"#,
        )
        .unwrap();
        let ParsedSystem::Naturals(system) = document.to_system().unwrap() else {
            panic!("expected naturals");
        };
        let (reduced, _) = system.reduce_to_first_order();
        assert_eq!(RecurrenceDocument::from_naturals(&reduced), document);
    }

    #[test]
    fn higher_degree_document_carries_seeds() {
        let document: RecurrenceDocument = serde_json::from_str(
            r#"{
                "semiring": "naturals",
                "functions": ["f"],
                "coefficients": [[1]],
                "degrees": [2],
                "seeds": [[3, 7]]
            }"#,
        )
        .unwrap();
        let ParsedSystem::Naturals(system) = document.to_system().unwrap() else {
            panic!("expected naturals");
        };
        let (reduced, _) = system.reduce_to_first_order();
        assert_eq!(reduced.function_count(), 2);
        assert_eq!(
            reduced.evaluate(3),
            vec![BigUint::from(7u32), BigUint::from(3u32)]
        );
    }

    #[test]
    fn letters_values_parse_and_encode() {
        let document: RecurrenceDocument = serde_json::from_str(
            r#"{
                "semiring": "letters",
                "alphabet": ["a", "b"],
                "functions": ["f1", "f2"],
                "coefficients": [[ "empty", ["a"] ], [ ["a"], ["b"] ]],
                "initial": ["eps", "empty"]
            }"#,
        )
        .unwrap();
        let ParsedSystem::Letters(alphabet, system) = document.to_system().unwrap() else {
            panic!("expected letters");
        };
        let (first_order, _) = system.reduce_to_first_order();
        assert_eq!(
            first_order.evaluate(4)[0],
            alphabet.word_set(&["aaaa", "abba"]).unwrap()
        );
        assert_eq!(
            RecurrenceDocument::from_letters(&alphabet, &first_order),
            document
        );
    }

    #[test]
    fn degrees_conflict_with_initial() {
        let document: RecurrenceDocument = serde_json::from_str(
            r#"{
                "semiring": "naturals",
                "functions": ["f"],
                "coefficients": [[1]],
                "degrees": [2],
                "initial": [1],
                "seeds": [[1, 2]]
            }"#,
        )
        .unwrap();
        assert_eq!(
            document.to_system().unwrap_err(),
            DocumentError::InitialWithDegrees
        );
    }

    #[test]
    fn bad_semiring_name_is_reported() {
        let document: RecurrenceDocument = serde_json::from_str(
            r#"{
                "semiring": "tropical",
                "functions": ["f"],
                "coefficients": [[1]],
                "initial": [1]
            }"#,
        )
        .unwrap();
        assert_eq!(
            document.to_system().unwrap_err(),
            DocumentError::SemiringName("tropical".to_string())
        );
    }
}
