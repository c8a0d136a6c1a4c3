//! Counting automata: weighted automata over a one-letter alphabet.
//!
//! Every transition reads the same letter, so the letter is left implicit
//! and a machine is just a weighted digraph: `k` states, a `k×k` transition
//! matrix over a semiring `K`, one initial state, and a final weight per
//! state. The machine does not accept words; it aggregates path weights.
//! [`CountingAutomaton::behavior`] at `n` is the sum over all length-`n`
//! paths from the initial state of the product of the traversed weights
//! times the final weight of the last state.
//!
//! [`CountingAutomaton::enumerate_successful_paths`] is a brute-force path
//! enumerator kept deliberately independent of the algebraic evaluation;
//! the test suites use it as an oracle for path-counting claims.

use thiserror::Error;

use crate::matrix::mat_vec;
use crate::semiring::series::SeriesPrefix;
use crate::semiring::Semiring;

/// Default cap on the path length accepted by the enumerator.
pub const DEFAULT_MAX_ENUMERATION_LENGTH: usize = 16;
/// Default cap on the number of paths the enumerator materializes.
pub const DEFAULT_MAX_ENUMERATED_PATHS: usize = 1_000_000;

/// A structural defect found while building or checking an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("automaton has no states")]
    NoStates,
    #[error("no initial state")]
    NoInitialState,
    #[error("multiple initial states ({count})")]
    MultipleInitialStates { count: usize },
    #[error("initial state index {index} out of range for {states} states")]
    InitialOutOfRange { index: usize, states: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate state label {0:?}")]
    DuplicateLabel(String),
    #[error("expected {expected} final weights, got {got}")]
    FinalWeightCount { expected: usize, got: usize },
    #[error("matrix shape: expected {expected} rows, got {got}")]
    MatrixRowCount { expected: usize, got: usize },
    #[error("matrix shape: row {row} has width {got}, expected {expected}")]
    MatrixRowWidth { row: usize, expected: usize, got: usize },
    #[error("expected one transition matrix per letter ({expected}), got {got}")]
    MatrixCount { expected: usize, got: usize },
}

/// Construction failed; carries every violation found.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid automaton: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct InvalidAutomaton(pub Vec<Violation>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("a path visits at least one state")]
    EmptyPath,
    #[error("no transition from state {from} to state {to}")]
    InvalidPath { from: usize, to: usize },
    #[error("state index {index} out of range for {states} states")]
    StateIndex { index: usize, states: usize },
    #[error("path length {requested} exceeds the enumeration guard {limit}")]
    LengthGuard { requested: usize, limit: usize },
    #[error("more than {limit} successful paths")]
    PathLimit { limit: usize },
}

/// A sequence of visited states `(q_0, …, q_n)`; its length is `n`, the
/// number of transitions taken.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    states: Vec<usize>,
}

impl Path {
    pub fn new(states: Vec<usize>) -> Result<Path, AutomatonError> {
        if states.is_empty() {
            return Err(AutomatonError::EmptyPath);
        }
        Ok(Path { states })
    }

    pub fn states(&self) -> &[usize] {
        &self.states
    }

    /// Number of transitions, one less than the number of visited states.
    pub fn len(&self) -> usize {
        self.states.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A counting automaton over the semiring `K`.
///
/// Initial weights are restricted to 0/1 with exactly one initial state;
/// final weights are arbitrary (`zero` means non-final).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingAutomaton<K> {
    labels: Vec<String>,
    initial: usize,
    final_weights: Vec<K>,
    transitions: Vec<Vec<K>>,
}

pub(crate) fn label_violations<K>(labels: &[String], final_weights: &[K]) -> Vec<Violation> {
    let states = labels.len();
    let mut violations = Vec::new();
    if states == 0 {
        violations.push(Violation::NoStates);
    }
    for (i, label) in labels.iter().enumerate() {
        if labels[..i].contains(label) {
            violations.push(Violation::DuplicateLabel(label.clone()));
        }
    }
    if final_weights.len() != states {
        violations.push(Violation::FinalWeightCount {
            expected: states,
            got: final_weights.len(),
        });
    }
    violations
}

pub(crate) fn matrix_violations<K>(states: usize, transitions: &[Vec<K>]) -> Vec<Violation> {
    let mut violations = Vec::new();
    if transitions.len() != states {
        violations.push(Violation::MatrixRowCount {
            expected: states,
            got: transitions.len(),
        });
    }
    for (row, entries) in transitions.iter().enumerate() {
        if entries.len() != states {
            violations.push(Violation::MatrixRowWidth {
                row,
                expected: states,
                got: entries.len(),
            });
        }
    }
    violations
}

fn shape_violations<K>(
    labels: &[String],
    final_weights: &[K],
    transitions: &[Vec<K>],
) -> Vec<Violation> {
    let mut violations = label_violations(labels, final_weights);
    violations.extend(matrix_violations(labels.len(), transitions));
    violations
}

pub(crate) fn default_labels(states: usize) -> Vec<String> {
    (1..=states).map(|i| format!("q{i}")).collect()
}

impl<K: Semiring> CountingAutomaton<K> {
    /// Builds an automaton with generated labels `q1..qk`.
    pub fn new(
        initial: usize,
        final_weights: Vec<K>,
        transitions: Vec<Vec<K>>,
    ) -> Result<Self, InvalidAutomaton> {
        Self::with_labels(
            default_labels(final_weights.len()),
            initial,
            final_weights,
            transitions,
        )
    }

    pub fn with_labels(
        labels: Vec<String>,
        initial: usize,
        final_weights: Vec<K>,
        transitions: Vec<Vec<K>>,
    ) -> Result<Self, InvalidAutomaton> {
        let mut violations = shape_violations(&labels, &final_weights, &transitions);
        if initial >= labels.len() {
            violations.push(Violation::InitialOutOfRange {
                index: initial,
                states: labels.len(),
            });
        }
        if violations.is_empty() {
            Ok(CountingAutomaton {
                labels,
                initial,
                final_weights,
                transitions,
            })
        } else {
            Err(InvalidAutomaton(violations))
        }
    }

    /// Builds from an explicit 0/1 initial-weight vector, which must mark
    /// exactly one state.
    pub fn from_initial_weights(
        labels: Vec<String>,
        initial_weights: &[bool],
        final_weights: Vec<K>,
        transitions: Vec<Vec<K>>,
    ) -> Result<Self, InvalidAutomaton> {
        let mut violations = shape_violations(&labels, &final_weights, &transitions);
        let marked: Vec<usize> = initial_weights
            .iter()
            .enumerate()
            .filter_map(|(i, on)| on.then_some(i))
            .collect();
        if initial_weights.len() != labels.len() {
            violations.push(Violation::LabelCount {
                expected: labels.len(),
                got: initial_weights.len(),
            });
        }
        match marked.len() {
            0 => violations.push(Violation::NoInitialState),
            1 => {}
            count => violations.push(Violation::MultipleInitialStates { count }),
        }
        if !violations.is_empty() {
            return Err(InvalidAutomaton(violations));
        }
        Ok(CountingAutomaton {
            labels,
            initial: marked[0],
            final_weights,
            transitions,
        })
    }

    /// Re-checks the stored representation; empty means well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations =
            shape_violations(&self.labels, &self.final_weights, &self.transitions);
        if self.initial >= self.labels.len() {
            violations.push(Violation::InitialOutOfRange {
                index: self.initial,
                states: self.labels.len(),
            });
        }
        violations
    }

    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, state: usize) -> &str {
        &self.labels[state]
    }

    pub fn initial_index(&self) -> usize {
        self.initial
    }

    pub fn final_weight(&self, state: usize) -> &K {
        &self.final_weights[state]
    }

    pub fn final_weights(&self) -> &[K] {
        &self.final_weights
    }

    pub fn is_final(&self, state: usize) -> bool {
        !self.final_weights[state].is_zero()
    }

    /// Indices of final states, in order.
    pub fn final_states(&self) -> Vec<usize> {
        (0..self.state_count()).filter(|&i| self.is_final(i)).collect()
    }

    pub fn transition_weight(&self, from: usize, to: usize) -> &K {
        &self.transitions[from][to]
    }

    pub fn transition_matrix(&self) -> &[Vec<K>] {
        &self.transitions
    }

    /// The weight `ι(q_0) · a_1 ⋯ a_n · φ(q_n)` of a path, with products
    /// taken left to right.
    ///
    /// Paths must follow non-zero transitions; a zero-weight step is a
    /// missing transition and yields [`AutomatonError::InvalidPath`].
    pub fn path_weight(&self, path: &Path) -> Result<K, AutomatonError> {
        let states = path.states();
        for &state in states {
            if state >= self.state_count() {
                return Err(AutomatonError::StateIndex {
                    index: state,
                    states: self.state_count(),
                });
            }
        }
        let mut weight = if states[0] == self.initial {
            K::one()
        } else {
            K::zero()
        };
        for window in states.windows(2) {
            let (from, to) = (window[0], window[1]);
            let step = &self.transitions[from][to];
            if step.is_zero() {
                return Err(AutomatonError::InvalidPath { from, to });
            }
            weight = weight.mul(step);
        }
        Ok(weight.mul(&self.final_weights[*states.last().unwrap()]))
    }

    /// Total weight of all length-`n` paths out of every state: entry `i`
    /// is the value at `n` of the function generated by state `i`.
    pub fn state_behaviors(&self, n: usize) -> Vec<K> {
        let mut values = self.final_weights.clone();
        for _ in 0..n {
            values = mat_vec(&self.transitions, &values);
        }
        values
    }

    /// The behavior of one state at `n`: the sum over all length-`n` paths
    /// starting there of the traversed weights times the final weight of
    /// the end state.
    pub fn state_behavior(&self, state: usize, n: usize) -> Result<K, AutomatonError> {
        if state >= self.state_count() {
            return Err(AutomatonError::StateIndex {
                index: state,
                states: self.state_count(),
            });
        }
        Ok(self.state_behaviors(n).into_iter().nth(state).unwrap())
    }

    /// The behavior of the automaton at `n`: the state behavior of the
    /// initial state.
    pub fn behavior(&self, n: usize) -> K {
        self.state_behaviors(n)
            .into_iter()
            .nth(self.initial)
            .unwrap()
    }

    /// The behavior as a truncated power series `(‖A‖(x⁰), …, ‖A‖(x^N))`,
    /// computed in one sweep.
    pub fn behavior_series(&self, truncation: usize) -> SeriesPrefix<K> {
        let mut values = self.final_weights.clone();
        let mut coefficients = Vec::with_capacity(truncation + 1);
        coefficients.push(values[self.initial].clone());
        for _ in 0..truncation {
            values = mat_vec(&self.transitions, &values);
            coefficients.push(values[self.initial].clone());
        }
        SeriesPrefix::new(coefficients)
    }

    /// All length-`n` paths from the initial state to a final state along
    /// non-zero transitions, in lexicographic order of their state
    /// sequences. Subject to the default guards.
    pub fn enumerate_successful_paths(&self, n: usize) -> Result<Vec<Path>, AutomatonError> {
        self.enumerate_successful_paths_bounded(
            n,
            DEFAULT_MAX_ENUMERATION_LENGTH,
            DEFAULT_MAX_ENUMERATED_PATHS,
        )
    }

    pub fn enumerate_successful_paths_bounded(
        &self,
        n: usize,
        max_length: usize,
        max_paths: usize,
    ) -> Result<Vec<Path>, AutomatonError> {
        if n > max_length {
            return Err(AutomatonError::LengthGuard {
                requested: n,
                limit: max_length,
            });
        }
        let k = self.state_count();
        // can_finish[r][q]: some final state is reachable from q in exactly
        // r steps. Expanding only such states keeps the search linear in
        // the number of successful paths.
        let mut can_finish = vec![vec![false; k]; n + 1];
        for q in 0..k {
            can_finish[0][q] = self.is_final(q);
        }
        for r in 1..=n {
            for q in 0..k {
                can_finish[r][q] = (0..k).any(|j| {
                    !self.transitions[q][j].is_zero() && can_finish[r - 1][j]
                });
            }
        }

        let mut paths = Vec::new();
        let mut stack = vec![self.initial];
        self.collect_paths(n, &can_finish, &mut stack, &mut paths, max_paths)?;
        Ok(paths)
    }

    fn collect_paths(
        &self,
        remaining: usize,
        can_finish: &[Vec<bool>],
        stack: &mut Vec<usize>,
        paths: &mut Vec<Path>,
        max_paths: usize,
    ) -> Result<(), AutomatonError> {
        let current = *stack.last().unwrap();
        if !can_finish[remaining][current] {
            return Ok(());
        }
        if remaining == 0 {
            if paths.len() == max_paths {
                return Err(AutomatonError::PathLimit { limit: max_paths });
            }
            paths.push(Path {
                states: stack.clone(),
            });
            return Ok(());
        }
        for next in 0..self.state_count() {
            if self.transitions[current][next].is_zero() {
                continue;
            }
            stack.push(next);
            self.collect_paths(remaining - 1, can_finish, stack, paths, max_paths)?;
            stack.pop();
        }
        Ok(())
    }
}

/// A weighted automaton over an explicit multi-letter alphabet: one
/// transition matrix per letter. Only used as input to alphabet
/// collapsing, which forgets the letters again.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralWeightedAutomaton<K> {
    letters: Vec<char>,
    labels: Vec<String>,
    initial: usize,
    final_weights: Vec<K>,
    matrices: Vec<Vec<Vec<K>>>,
}

impl<K: Semiring> GeneralWeightedAutomaton<K> {
    pub fn new(
        letters: Vec<char>,
        labels: Vec<String>,
        initial: usize,
        final_weights: Vec<K>,
        matrices: Vec<Vec<Vec<K>>>,
    ) -> Result<Self, InvalidAutomaton> {
        let mut violations = label_violations(&labels, &final_weights);
        if matrices.len() != letters.len() {
            violations.push(Violation::MatrixCount {
                expected: letters.len(),
                got: matrices.len(),
            });
        }
        for matrix in &matrices {
            violations.extend(matrix_violations(labels.len(), matrix));
        }
        if initial >= labels.len() {
            violations.push(Violation::InitialOutOfRange {
                index: initial,
                states: labels.len(),
            });
        }
        if violations.is_empty() {
            Ok(GeneralWeightedAutomaton {
                letters,
                labels,
                initial,
                final_weights,
                matrices,
            })
        } else {
            Err(InvalidAutomaton(violations))
        }
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn initial_index(&self) -> usize {
        self.initial
    }

    pub fn final_weights(&self) -> &[K] {
        &self.final_weights
    }

    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    /// The transition matrix read on one letter.
    pub fn matrix(&self, letter: usize) -> &[Vec<K>] {
        &self.matrices[letter]
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;

    use super::*;
    use crate::semiring::words::{Alphabet, WordSet};

    /// The two-state machine recognizing (ab*a)*: states f1 (initial,
    /// final) and f2, with f1 -{a}-> f2, f2 -{a}-> f1, f2 -{b}-> f2.
    fn ab_star_a_star() -> (Alphabet, CountingAutomaton<WordSet>) {
        let alphabet: Alphabet = "ab".parse().unwrap();
        let a = alphabet.word_set(&["a"]).unwrap();
        let b = alphabet.word_set(&["b"]).unwrap();
        let automaton = CountingAutomaton::with_labels(
            vec!["f1".into(), "f2".into()],
            0,
            vec![WordSet::epsilon(), WordSet::empty()],
            vec![
                vec![WordSet::empty(), a.clone()],
                vec![a, b],
            ],
        )
        .unwrap();
        (alphabet, automaton)
    }

    #[test]
    fn empty_path_weight_at_final_initial_is_one() {
        let (_, automaton) = ab_star_a_star();
        let path = Path::new(vec![0]).unwrap();
        assert_eq!(automaton.path_weight(&path).unwrap(), WordSet::one());
    }

    #[test]
    fn path_from_non_initial_state_weighs_zero() {
        let (alphabet, automaton) = ab_star_a_star();
        let path = Path::new(vec![1, 0]).unwrap();
        assert_eq!(automaton.path_weight(&path).unwrap(), WordSet::zero());
        let _ = alphabet;
    }

    #[test]
    fn loop_path_weight_multiplies_letter_sets() {
        let (alphabet, automaton) = ab_star_a_star();
        let path = Path::new(vec![0, 1, 0]).unwrap();
        assert_eq!(
            automaton.path_weight(&path).unwrap(),
            alphabet.word_set(&["aa"]).unwrap()
        );
    }

    #[test]
    fn missing_transition_is_invalid() {
        let (_, automaton) = ab_star_a_star();
        let path = Path::new(vec![0, 0]).unwrap();
        assert_eq!(
            automaton.path_weight(&path).unwrap_err(),
            AutomatonError::InvalidPath { from: 0, to: 0 }
        );
    }

    #[test]
    fn behavior_reproduces_cross_sections() {
        let (alphabet, automaton) = ab_star_a_star();
        assert_eq!(automaton.behavior(0), WordSet::epsilon());
        assert_eq!(automaton.behavior(1), WordSet::empty());
        assert_eq!(
            automaton.behavior(4),
            alphabet.word_set(&["aaaa", "abba"]).unwrap()
        );
    }

    #[test]
    fn state_behavior_base_cases() {
        let (alphabet, automaton) = ab_star_a_star();
        assert_eq!(automaton.state_behavior(0, 0).unwrap(), WordSet::epsilon());
        assert_eq!(automaton.state_behavior(1, 0).unwrap(), WordSet::empty());
        // From f2 in one step only f2 -> f1 ends final.
        assert_eq!(
            automaton.state_behavior(1, 1).unwrap(),
            alphabet.word_set(&["a"]).unwrap()
        );
        assert!(matches!(
            automaton.state_behavior(5, 0),
            Err(AutomatonError::StateIndex { index: 5, states: 2 })
        ));
    }

    #[test]
    fn behavior_series_matches_pointwise_behavior() {
        let (_, automaton) = ab_star_a_star();
        let series = automaton.behavior_series(6);
        for n in 0..=6 {
            assert_eq!(series.coefficient(n), Some(&automaton.behavior(n)));
        }
    }

    #[test]
    fn enumerate_empty_path_cases() {
        let (_, automaton) = ab_star_a_star();
        let paths = automaton.enumerate_successful_paths(0).unwrap();
        assert_eq!(paths, vec![Path::new(vec![0]).unwrap()]);

        let non_final = CountingAutomaton::<bool>::new(
            0,
            vec![false],
            vec![vec![true]],
        )
        .unwrap();
        assert!(non_final.enumerate_successful_paths(0).unwrap().is_empty());
    }

    #[test]
    fn enumerate_lists_paths_lexicographically() {
        let (_, automaton) = ab_star_a_star();
        let paths = automaton.enumerate_successful_paths(4).unwrap();
        let sequences: Vec<&[usize]> = paths.iter().map(|p| p.states()).collect();
        assert_eq!(sequences, vec![&[0, 1, 0, 1, 0][..], &[0, 1, 1, 1, 0][..]]);
    }

    #[test]
    fn enumeration_length_guard() {
        let (_, automaton) = ab_star_a_star();
        assert_eq!(
            automaton.enumerate_successful_paths(17).unwrap_err(),
            AutomatonError::LengthGuard {
                requested: 17,
                limit: 16
            }
        );
    }

    #[test]
    fn enumeration_path_limit() {
        // Complete 2-state machine over the Booleans: 2^n successful paths.
        let automaton = CountingAutomaton::<bool>::new(
            0,
            vec![true, true],
            vec![vec![true, true], vec![true, true]],
        )
        .unwrap();
        assert_eq!(
            automaton
                .enumerate_successful_paths_bounded(10, 16, 100)
                .unwrap_err(),
            AutomatonError::PathLimit { limit: 100 }
        );
    }

    #[test]
    fn behavior_counts_paths_for_zero_one_weights() {
        let automaton = CountingAutomaton::<BigUint>::new(
            0,
            vec![BigUint::from(1u32), BigUint::from(0u32)],
            vec![
                vec![BigUint::from(0u32), BigUint::from(1u32)],
                vec![BigUint::from(1u32), BigUint::from(1u32)],
            ],
        )
        .unwrap();
        for n in 0..=10 {
            let count = automaton.enumerate_successful_paths(n).unwrap().len();
            assert_eq!(automaton.behavior(n), BigUint::from(count));
        }
    }

    #[test]
    fn construction_reports_all_violations() {
        let err = CountingAutomaton::<bool>::from_initial_weights(
            vec!["a".into(), "b".into()],
            &[true, true],
            vec![false, false],
            vec![vec![false, false], vec![false, false]],
        )
        .unwrap_err();
        assert_eq!(err.0, vec![Violation::MultipleInitialStates { count: 2 }]);

        let err = CountingAutomaton::<bool>::from_initial_weights(
            vec!["a".into(), "b".into()],
            &[false, false],
            vec![false, false],
            vec![vec![false; 3], vec![false; 3], vec![false; 3]],
        )
        .unwrap_err();
        assert!(err.0.contains(&Violation::NoInitialState));
        assert!(err
            .0
            .contains(&Violation::MatrixRowCount { expected: 2, got: 3 }));

        let ok = CountingAutomaton::<bool>::new(
            0,
            vec![true, false],
            vec![vec![false, true], vec![true, false]],
        )
        .unwrap();
        assert!(ok.validate().is_empty());
    }
}
