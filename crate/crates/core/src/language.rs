//! Language recognition by counting automata over letter sets.
//!
//! A [`LanguageAutomaton`] is a counting automaton whose transition weights
//! are subsets of a declared alphabet and whose final weights are `{ε}` or
//! `∅`. Its behavior at `n` is then a set of length-`n` words — the `n`th
//! *cross-section* of the recognized language — so the language arrives
//! pre-partitioned by word length.
//!
//! The module also carries the classical machinery this view plugs into:
//! membership by state-set scanning, the right-linear grammar whose
//! derivations generate the same language, a determinism test, and subset
//! construction.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::automaton::{self, CountingAutomaton, InvalidAutomaton};
use crate::matrix::mat_vec;
use crate::semiring::words::{Alphabet, Letter, LetterSet, Word, WordSet};
use crate::semiring::Semiring;

/// Default cap on the total number of words materialized by a sweep.
pub const DEFAULT_MAX_WORDS: usize = 1_000_000;
/// Largest automaton the subset construction accepts.
pub const DEFAULT_DETERMINIZE_STATE_GUARD: usize = 20;
/// Cap on the number of subset states the construction may materialize.
pub const DEFAULT_SUBSET_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LanguageError {
    #[error(transparent)]
    Invalid(#[from] InvalidAutomaton),
    #[error("transition {from}->{to}: weight contains a word of length != 1")]
    NotALetterSet { from: usize, to: usize },
    #[error("transition {from}->{to}: letter outside the declared alphabet")]
    LetterOutsideAlphabet { from: usize, to: usize },
    #[error("final weight of state {state} must be empty or {{ε}}")]
    FinalWeight { state: usize },
    #[error("word uses letter #{index}, but the alphabet has {size} symbols")]
    WordOutsideAlphabet { index: usize, size: usize },
    #[error("computation exceeds the word limit of {limit}")]
    WordLimit { limit: usize },
    #[error("determinization guard: {states} states exceeds the limit of {limit}")]
    StateGuard { states: usize, limit: usize },
    #[error("determinization materialized more than {limit} subset states")]
    SubsetLimit { limit: usize },
}

/// A counting automaton over `P(Σ)`: letter-set transition weights, one
/// initial state, and final weights restricted to `∅` / `{ε}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageAutomaton {
    alphabet: Alphabet,
    labels: Vec<String>,
    initial: usize,
    finals: Vec<bool>,
    transitions: Vec<Vec<LetterSet>>,
}

impl LanguageAutomaton {
    pub fn new(
        alphabet: Alphabet,
        labels: Vec<String>,
        initial: usize,
        finals: Vec<bool>,
        transitions: Vec<Vec<LetterSet>>,
    ) -> Result<Self, LanguageError> {
        let mut violations = automaton::label_violations(&labels, &finals);
        violations.extend(automaton::matrix_violations(labels.len(), &transitions));
        if initial >= labels.len() {
            violations.push(automaton::Violation::InitialOutOfRange {
                index: initial,
                states: labels.len(),
            });
        }
        if !violations.is_empty() {
            return Err(InvalidAutomaton(violations).into());
        }
        for (from, row) in transitions.iter().enumerate() {
            for (to, weight) in row.iter().enumerate() {
                if weight.letters().any(|l| !alphabet.contains(l)) {
                    return Err(LanguageError::LetterOutsideAlphabet { from, to });
                }
            }
        }
        Ok(LanguageAutomaton {
            alphabet,
            labels,
            initial,
            finals,
            transitions,
        })
    }

    /// Builds with generated labels `q1..qk`.
    pub fn with_default_labels(
        alphabet: Alphabet,
        initial: usize,
        finals: Vec<bool>,
        transitions: Vec<Vec<LetterSet>>,
    ) -> Result<Self, LanguageError> {
        let labels = automaton::default_labels(finals.len());
        Self::new(alphabet, labels, initial, finals, transitions)
    }

    /// Reads a language automaton back out of a word-set weighted counting
    /// automaton. Rejects weights that are not letter sets and final
    /// weights other than `∅` / `{ε}`.
    pub fn from_counting(
        alphabet: Alphabet,
        automaton: &CountingAutomaton<WordSet>,
    ) -> Result<Self, LanguageError> {
        let k = automaton.state_count();
        let mut finals = Vec::with_capacity(k);
        for state in 0..k {
            let weight = automaton.final_weight(state);
            if weight.is_zero() {
                finals.push(false);
            } else if *weight == WordSet::one() {
                finals.push(true);
            } else {
                return Err(LanguageError::FinalWeight { state });
            }
        }
        let mut transitions = vec![vec![LetterSet::empty(); k]; k];
        for (from, row) in transitions.iter_mut().enumerate() {
            for (to, cell) in row.iter_mut().enumerate() {
                let weight = automaton.transition_weight(from, to);
                *cell = LetterSet::from_word_set(weight)
                    .ok_or(LanguageError::NotALetterSet { from, to })?;
            }
        }
        Self::new(
            alphabet,
            automaton.labels().to_vec(),
            automaton.initial_index(),
            finals,
            transitions,
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, state: usize) -> &str {
        &self.labels[state]
    }

    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn initial_index(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn final_states(&self) -> Vec<usize> {
        (0..self.state_count()).filter(|&i| self.finals[i]).collect()
    }

    pub fn letter_set(&self, from: usize, to: usize) -> &LetterSet {
        &self.transitions[from][to]
    }

    /// The same machine as a counting automaton over the language semiring.
    pub fn to_counting(&self) -> CountingAutomaton<WordSet> {
        CountingAutomaton::with_labels(
            self.labels.clone(),
            self.initial,
            self.final_word_sets(),
            self.word_set_matrix(),
        )
        .expect("language automaton is structurally valid")
    }

    fn word_set_matrix(&self) -> Vec<Vec<WordSet>> {
        self.transitions
            .iter()
            .map(|row| row.iter().map(LetterSet::to_word_set).collect())
            .collect()
    }

    fn final_word_sets(&self) -> Vec<WordSet> {
        self.finals
            .iter()
            .map(|f| if *f { WordSet::one() } else { WordSet::zero() })
            .collect()
    }

    /// The set of length-`n` words recognized: the value at `n` of the
    /// initial state's function.
    pub fn cross_section(&self, n: usize) -> Result<CrossSection, LanguageError> {
        self.cross_section_bounded(n, DEFAULT_MAX_WORDS)
    }

    pub fn cross_section_bounded(
        &self,
        n: usize,
        max_words: usize,
    ) -> Result<CrossSection, LanguageError> {
        let matrix = self.word_set_matrix();
        let mut values = self.final_word_sets();
        for _ in 0..n {
            values = mat_vec(&matrix, &values);
            check_word_budget(&values, max_words)?;
        }
        Ok(CrossSection {
            n,
            words: values.swap_remove(self.initial),
        })
    }

    /// Cross-sections for every length `0..=max_n`, computed in one sweep.
    pub fn enumerate_up_to(&self, max_n: usize) -> Result<Vec<CrossSection>, LanguageError> {
        self.enumerate_up_to_bounded(max_n, DEFAULT_MAX_WORDS)
    }

    pub fn enumerate_up_to_bounded(
        &self,
        max_n: usize,
        max_words: usize,
    ) -> Result<Vec<CrossSection>, LanguageError> {
        let matrix = self.word_set_matrix();
        let mut values = self.final_word_sets();
        let mut sections = Vec::with_capacity(max_n + 1);
        sections.push(CrossSection {
            n: 0,
            words: values[self.initial].clone(),
        });
        for n in 1..=max_n {
            values = mat_vec(&matrix, &values);
            check_word_budget(&values, max_words)?;
            sections.push(CrossSection {
                n,
                words: values[self.initial].clone(),
            });
        }
        Ok(sections)
    }

    /// Whether a word is recognized, by scanning the reachable state set
    /// along the word's letters. Runs in `O(|w| · k²)`, independent of the
    /// size of any cross-section.
    pub fn member(&self, word: &Word) -> Result<bool, LanguageError> {
        for letter in word.letters() {
            if !self.alphabet.contains(letter) {
                return Err(LanguageError::WordOutsideAlphabet {
                    index: letter.index(),
                    size: self.alphabet.len(),
                });
            }
        }
        let mut reachable = vec![false; self.state_count()];
        reachable[self.initial] = true;
        for letter in word.letters() {
            let mut next = vec![false; self.state_count()];
            for (from, row) in self.transitions.iter().enumerate() {
                if !reachable[from] {
                    continue;
                }
                for (to, weight) in row.iter().enumerate() {
                    if weight.contains(letter) {
                        next[to] = true;
                    }
                }
            }
            reachable = next;
        }
        Ok(reachable
            .iter()
            .zip(&self.finals)
            .any(|(reached, is_final)| *reached && *is_final))
    }

    /// The right-linear grammar generating the recognized language: a
    /// production `A_i -> a A_j` per letter of each transition weight, and
    /// `A_i -> ε` per final state.
    ///
    /// The initial state becomes the start symbol `S`; remaining states are
    /// numbered `A2, A3, …` in state order.
    pub fn to_grammar(&self) -> RegularGrammar {
        let k = self.state_count();
        // Grammar order: initial state first, then the rest in state order.
        let mut order: Vec<usize> = Vec::with_capacity(k);
        order.push(self.initial);
        order.extend((0..k).filter(|&i| i != self.initial));
        let mut grammar_index = vec![0usize; k];
        for (g, &state) in order.iter().enumerate() {
            grammar_index[state] = g;
        }

        let mut nonterminals = Vec::with_capacity(k);
        for g in 0..k {
            nonterminals.push(if g == 0 {
                "S".to_string()
            } else {
                format!("A{}", g + 1)
            });
        }

        let mut productions = Vec::new();
        for (g, &state) in order.iter().enumerate() {
            let mut steps: Vec<(Letter, usize)> = Vec::new();
            for (to, weight) in self.transitions[state].iter().enumerate() {
                for letter in weight.letters() {
                    steps.push((letter, grammar_index[to]));
                }
            }
            steps.sort();
            productions.extend(
                steps
                    .into_iter()
                    .map(|(letter, to)| Production::Step { from: g, letter, to }),
            );
            if self.finals[state] {
                productions.push(Production::Epsilon { from: g });
            }
        }

        RegularGrammar {
            alphabet: self.alphabet.clone(),
            nonterminals,
            productions,
        }
    }

    /// True when every state's outgoing transition letter sets are pairwise
    /// disjoint, i.e. each letter leaves each state in at most one way.
    pub fn is_deterministic(&self) -> bool {
        self.transitions.iter().all(|row| {
            let mut seen = LetterSet::empty();
            for weight in row {
                if !seen.is_disjoint(weight) {
                    return false;
                }
                seen = seen.union(weight);
            }
            true
        })
    }

    /// Subset construction over reachable state sets. The result recognizes
    /// the same language and is deterministic; its states are labeled by
    /// the subsets they stand for, e.g. `{f1,f2}`.
    pub fn determinize(&self) -> Result<LanguageAutomaton, LanguageError> {
        self.determinize_bounded(DEFAULT_DETERMINIZE_STATE_GUARD, DEFAULT_SUBSET_LIMIT)
    }

    pub fn determinize_bounded(
        &self,
        state_guard: usize,
        subset_limit: usize,
    ) -> Result<LanguageAutomaton, LanguageError> {
        let k = self.state_count();
        if k > state_guard {
            return Err(LanguageError::StateGuard {
                states: k,
                limit: state_guard,
            });
        }

        let mut index_of: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut edges: BTreeMap<(usize, usize), LetterSet> = BTreeMap::new();

        let start = vec![self.initial];
        index_of.insert(start.clone(), 0);
        subsets.push(start);

        let mut next_to_visit = 0;
        while next_to_visit < subsets.len() {
            let current = subsets[next_to_visit].clone();
            for letter in self.alphabet.letters() {
                let target: Vec<usize> = (0..k)
                    .filter(|&to| {
                        current
                            .iter()
                            .any(|&from| self.transitions[from][to].contains(letter))
                    })
                    .collect();
                if target.is_empty() {
                    continue;
                }
                let target_index = *index_of.entry(target.clone()).or_insert_with(|| {
                    subsets.push(target);
                    subsets.len() - 1
                });
                if subsets.len() > subset_limit {
                    return Err(LanguageError::SubsetLimit { limit: subset_limit });
                }
                edges
                    .entry((next_to_visit, target_index))
                    .or_insert_with(LetterSet::empty)
                    .insert(letter);
            }
            next_to_visit += 1;
        }

        let size = subsets.len();
        let labels: Vec<String> = subsets
            .iter()
            .map(|subset| {
                let names: Vec<&str> = subset.iter().map(|&i| self.labels[i].as_str()).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        let finals: Vec<bool> = subsets
            .iter()
            .map(|subset| subset.iter().any(|&i| self.finals[i]))
            .collect();
        let mut transitions = vec![vec![LetterSet::empty(); size]; size];
        for ((from, to), letters) in edges {
            transitions[from][to] = letters;
        }

        LanguageAutomaton::new(self.alphabet.clone(), labels, 0, finals, transitions)
    }
}

fn check_word_budget(values: &[WordSet], max_words: usize) -> Result<(), LanguageError> {
    let total: usize = values.iter().map(WordSet::len).sum();
    if total > max_words {
        return Err(LanguageError::WordLimit { limit: max_words });
    }
    Ok(())
}

/// The set of all words of one fixed length in a language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossSection {
    n: usize,
    words: WordSet,
}

impl CrossSection {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &WordSet {
        &self.words
    }

    pub fn into_words(self) -> WordSet {
        self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// A right-linear production.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Production {
    Step { from: usize, letter: Letter, to: usize },
    Epsilon { from: usize },
}

/// A right-linear grammar: productions `A_i -> a A_j` and `A_i -> ε`, with
/// start symbol `S = A_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularGrammar {
    alphabet: Alphabet,
    nonterminals: Vec<String>,
    productions: Vec<Production>,
}

impl RegularGrammar {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    /// All length-`n` words derivable from `S`, by exhaustive breadth-first
    /// derivation. A length-`n` word takes exactly `n` step productions and
    /// one ε production, so the search runs `n` rounds.
    pub fn generate(&self, n: usize) -> Result<WordSet, LanguageError> {
        self.generate_bounded(n, DEFAULT_MAX_WORDS)
    }

    pub fn generate_bounded(&self, n: usize, max_words: usize) -> Result<WordSet, LanguageError> {
        // prefixes[A]: words w with a derivation S ⇒* wA in |w| steps.
        let mut prefixes = vec![WordSet::empty(); self.nonterminals.len()];
        prefixes[0] = WordSet::one();
        for _ in 0..n {
            let mut next = vec![WordSet::empty(); self.nonterminals.len()];
            for production in &self.productions {
                if let Production::Step { from, letter, to } = production {
                    if prefixes[*from].is_empty() {
                        continue;
                    }
                    let step = WordSet::singleton(Word::from(*letter));
                    next[*to] = next[*to].union(&prefixes[*from].concat(&step));
                }
            }
            check_word_budget(&next, max_words)?;
            prefixes = next;
        }
        let mut words = WordSet::empty();
        for production in &self.productions {
            if let Production::Epsilon { from } = production {
                words = words.union(&prefixes[*from]);
            }
        }
        Ok(words)
    }

    /// One production per line: `S -> a A2`, `A2 -> eps`. Within a source
    /// nonterminal, step productions come first (by terminal, then target),
    /// then its ε production.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for production in &self.productions {
            match production {
                Production::Step { from, letter, to } => {
                    out.push_str(&format!(
                        "{} -> {} {}\n",
                        self.nonterminals[*from],
                        self.alphabet.symbol(*letter),
                        self.nonterminals[*to],
                    ));
                }
                Production::Epsilon { from } => {
                    out.push_str(&format!("{} -> eps\n", self.nonterminals[*from]));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet() -> Alphabet {
        "ab".parse().unwrap()
    }

    fn letters(alphabet: &Alphabet, symbols: &str) -> LetterSet {
        alphabet.letter_set(symbols).unwrap()
    }

    /// The (ab*a)* machine: f1 -{a}-> f2, f2 -{a}-> f1, f2 -{b}-> f2;
    /// f1 initial and final.
    fn ab_star_a_star() -> LanguageAutomaton {
        let sigma = alphabet();
        LanguageAutomaton::new(
            sigma.clone(),
            vec!["f1".into(), "f2".into()],
            0,
            vec![true, false],
            vec![
                vec![letters(&sigma, ""), letters(&sigma, "a")],
                vec![letters(&sigma, "a"), letters(&sigma, "b")],
            ],
        )
        .unwrap()
    }

    /// The a*ba*ba* machine: a-loops on all three states, b-steps forward.
    fn two_bs() -> LanguageAutomaton {
        let sigma = alphabet();
        LanguageAutomaton::new(
            sigma.clone(),
            vec!["f1".into(), "f2".into(), "f3".into()],
            0,
            vec![false, false, true],
            vec![
                vec![letters(&sigma, "a"), letters(&sigma, "b"), letters(&sigma, "")],
                vec![letters(&sigma, ""), letters(&sigma, "a"), letters(&sigma, "b")],
                vec![letters(&sigma, ""), letters(&sigma, ""), letters(&sigma, "a")],
            ],
        )
        .unwrap()
    }

    fn section_words(automaton: &LanguageAutomaton, n: usize) -> WordSet {
        automaton.cross_section(n).unwrap().into_words()
    }

    #[test]
    fn cross_sections_of_the_star_language() {
        let automaton = ab_star_a_star();
        let sigma = automaton.alphabet().clone();
        assert_eq!(section_words(&automaton, 0), WordSet::one());
        assert_eq!(section_words(&automaton, 1), WordSet::zero());
        assert_eq!(
            section_words(&automaton, 4),
            sigma.word_set(&["aaaa", "abba"]).unwrap()
        );
    }

    #[test]
    fn cross_section_words_all_have_length_n() {
        let automaton = two_bs();
        for n in 0..=6 {
            let section = automaton.cross_section(n).unwrap();
            assert!(section.words().words().all(|w| w.len() == n));
        }
    }

    #[test]
    fn enumerate_collects_every_section() {
        let automaton = ab_star_a_star();
        let sigma = automaton.alphabet().clone();
        let sections = automaton.enumerate_up_to(4).unwrap();
        let words: Vec<WordSet> = sections.into_iter().map(CrossSection::into_words).collect();
        assert_eq!(
            words,
            vec![
                WordSet::one(),
                WordSet::zero(),
                sigma.word_set(&["aa"]).unwrap(),
                sigma.word_set(&["aba"]).unwrap(),
                sigma.word_set(&["aaaa", "abba"]).unwrap(),
            ]
        );
    }

    #[test]
    fn empty_and_epsilon_languages() {
        let sigma = alphabet();
        let empty = LanguageAutomaton::with_default_labels(
            sigma.clone(),
            0,
            vec![false],
            vec![vec![letters(&sigma, "")]],
        )
        .unwrap();
        for section in empty.enumerate_up_to(3).unwrap() {
            assert!(section.is_empty());
        }

        let epsilon = LanguageAutomaton::with_default_labels(
            sigma.clone(),
            0,
            vec![true],
            vec![vec![letters(&sigma, "")]],
        )
        .unwrap();
        let words: Vec<WordSet> = epsilon
            .enumerate_up_to(2)
            .unwrap()
            .into_iter()
            .map(CrossSection::into_words)
            .collect();
        assert_eq!(words, vec![WordSet::one(), WordSet::zero(), WordSet::zero()]);
    }

    #[test]
    fn membership_scan() {
        let automaton = ab_star_a_star();
        let sigma = automaton.alphabet();
        assert!(automaton.member(&sigma.word("abba").unwrap()).unwrap());
        assert!(!automaton.member(&sigma.word("a").unwrap()).unwrap());
        assert!(automaton.member(&Word::empty()).unwrap());

        let not_epsilon = two_bs();
        assert!(!not_epsilon.member(&Word::empty()).unwrap());
    }

    #[test]
    fn membership_rejects_foreign_letters() {
        let automaton = ab_star_a_star();
        let wide: Alphabet = "abc".parse().unwrap();
        let word = wide.word("c").unwrap();
        assert_eq!(
            automaton.member(&word).unwrap_err(),
            LanguageError::WordOutsideAlphabet { index: 2, size: 2 }
        );
    }

    #[test]
    fn grammar_of_the_star_language() {
        let grammar = ab_star_a_star().to_grammar();
        assert_eq!(
            grammar.to_text(),
            "S -> a A2\nS -> eps\nA2 -> a S\nA2 -> b A2\n"
        );
    }

    #[test]
    fn grammar_of_trivial_machines() {
        let sigma = alphabet();
        let epsilon_only = LanguageAutomaton::with_default_labels(
            sigma.clone(),
            0,
            vec![true],
            vec![vec![letters(&sigma, "")]],
        )
        .unwrap();
        assert_eq!(epsilon_only.to_grammar().to_text(), "S -> eps\n");

        // The two-state single-letter machine: S -> a A2, A2 -> eps.
        let single = LanguageAutomaton::with_default_labels(
            sigma.clone(),
            0,
            vec![false, true],
            vec![
                vec![letters(&sigma, ""), letters(&sigma, "a")],
                vec![letters(&sigma, ""), letters(&sigma, "")],
            ],
        )
        .unwrap();
        assert_eq!(single.to_grammar().to_text(), "S -> a A2\nA2 -> eps\n");
        assert_eq!(
            single.to_grammar().generate(1).unwrap(),
            sigma.word_set(&["a"]).unwrap()
        );
        assert_eq!(single.to_grammar().generate(0).unwrap(), WordSet::zero());
        assert_eq!(epsilon_only.to_grammar().generate(0).unwrap(), WordSet::one());
    }

    #[test]
    fn grammar_generates_the_cross_sections() {
        let automaton = ab_star_a_star();
        let grammar = automaton.to_grammar();
        for n in 0..=6 {
            assert_eq!(
                grammar.generate(n).unwrap(),
                section_words(&automaton, n),
                "length {n}"
            );
        }
    }

    #[test]
    fn determinism_test() {
        assert!(ab_star_a_star().is_deterministic());
        assert!(two_bs().is_deterministic());

        let sigma = alphabet();
        let ambiguous = LanguageAutomaton::with_default_labels(
            sigma.clone(),
            0,
            vec![false, true],
            vec![
                vec![letters(&sigma, "a"), letters(&sigma, "a")],
                vec![letters(&sigma, ""), letters(&sigma, "")],
            ],
        )
        .unwrap();
        assert!(!ambiguous.is_deterministic());
    }

    #[test]
    fn determinize_preserves_language() {
        let sigma = alphabet();
        // Nondeterministic on 'a' out of the initial state.
        let ambiguous = LanguageAutomaton::with_default_labels(
            sigma.clone(),
            0,
            vec![false, true],
            vec![
                vec![letters(&sigma, "a"), letters(&sigma, "a")],
                vec![letters(&sigma, ""), letters(&sigma, "")],
            ],
        )
        .unwrap();
        let deterministic = ambiguous.determinize().unwrap();
        assert!(deterministic.is_deterministic());
        for n in 0..=6 {
            assert_eq!(
                section_words(&deterministic, n),
                section_words(&ambiguous, n),
                "length {n}"
            );
        }

        // Determinizing a deterministic machine keeps the language.
        let already = ab_star_a_star();
        let again = already.determinize().unwrap();
        assert!(again.is_deterministic());
        for n in 0..=6 {
            assert_eq!(section_words(&again, n), section_words(&already, n));
        }
    }

    #[test]
    fn determinize_separates_a_and_ab() {
        let sigma = alphabet();
        // {a} ∪ {ab} with a nondeterministic fork at the initial state.
        let fork = LanguageAutomaton::new(
            sigma.clone(),
            vec!["h".into(), "x".into(), "y1".into(), "y2".into()],
            0,
            vec![false, true, false, true],
            vec![
                vec![
                    letters(&sigma, ""),
                    letters(&sigma, "a"),
                    letters(&sigma, "a"),
                    letters(&sigma, ""),
                ],
                vec![letters(&sigma, ""); 4],
                vec![
                    letters(&sigma, ""),
                    letters(&sigma, ""),
                    letters(&sigma, ""),
                    letters(&sigma, "b"),
                ],
                vec![letters(&sigma, ""); 4],
            ],
        )
        .unwrap();
        assert!(!fork.is_deterministic());
        let deterministic = fork.determinize().unwrap();
        assert!(deterministic.is_deterministic());
        assert_eq!(
            section_words(&deterministic, 1),
            sigma.word_set(&["a"]).unwrap()
        );
        assert_eq!(
            section_words(&deterministic, 2),
            sigma.word_set(&["ab"]).unwrap()
        );
        assert!(section_words(&deterministic, 3).is_empty());
        // Reachable-only construction: start, {x,y1}, {y2}.
        assert_eq!(deterministic.labels(), &["{h}", "{x,y1}", "{y2}"]);
    }

    #[test]
    fn determinize_guard_on_state_count() {
        let sigma = alphabet();
        let k = 21;
        let automaton = LanguageAutomaton::with_default_labels(
            sigma.clone(),
            0,
            vec![true; k],
            vec![vec![letters(&sigma, ""); k]; k],
        )
        .unwrap();
        assert_eq!(
            automaton.determinize().unwrap_err(),
            LanguageError::StateGuard { states: 21, limit: 20 }
        );
    }

    #[test]
    fn word_limit_guard_fires() {
        let sigma = alphabet();
        // One state accepting Σ*: cross-sections double in size each step.
        let all = LanguageAutomaton::with_default_labels(
            sigma.clone(),
            0,
            vec![true],
            vec![vec![letters(&sigma, "ab")]],
        )
        .unwrap();
        assert_eq!(
            all.cross_section_bounded(10, 100).unwrap_err(),
            LanguageError::WordLimit { limit: 100 }
        );
        assert_eq!(all.cross_section_bounded(6, 100).unwrap().len(), 64);
    }

    #[test]
    fn rich_final_weights_are_rejected() {
        let sigma = alphabet();
        let automaton = CountingAutomaton::with_labels(
            vec!["f1".into()],
            0,
            vec![sigma.word_set(&["a"]).unwrap()],
            vec![vec![WordSet::zero()]],
        )
        .unwrap();
        assert_eq!(
            LanguageAutomaton::from_counting(sigma.clone(), &automaton).unwrap_err(),
            LanguageError::FinalWeight { state: 0 }
        );
    }

    #[test]
    fn long_words_in_weights_are_rejected() {
        let sigma = alphabet();
        let automaton = CountingAutomaton::with_labels(
            vec!["f1".into()],
            0,
            vec![WordSet::one()],
            vec![vec![sigma.word_set(&["ab"]).unwrap()]],
        )
        .unwrap();
        assert_eq!(
            LanguageAutomaton::from_counting(sigma.clone(), &automaton).unwrap_err(),
            LanguageError::NotALetterSet { from: 0, to: 0 }
        );
    }

    #[test]
    fn counting_view_round_trips() {
        let automaton = ab_star_a_star();
        let counting = automaton.to_counting();
        let back =
            LanguageAutomaton::from_counting(automaton.alphabet().clone(), &counting).unwrap();
        assert_eq!(back, automaton);
    }
}
