//! Linear recurrence systems over a semiring and their correspondence with
//! counting automata.
//!
//! A system `f_i(n+1) = Σ_j a_ij · f_j(n)`, `f_i(0) = c_i` is the same data
//! as a counting automaton: the coefficient matrix is the transition matrix
//! and the initial values are the final weights. [`RecurrenceSystem`] stores
//! the first-order form; [`HigherDegreeSystem`] admits equations
//! `f_i(n+d) = Σ_j a_ij · f_j(n)` and reduces them to first order by
//! chaining auxiliary shift functions.

use num_bigint::BigUint;
use thiserror::Error;

use crate::automaton::CountingAutomaton;
use crate::matrix::{mat_pow, mat_vec};
use crate::semiring::series::SeriesPrefix;
use crate::semiring::Semiring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("system needs at least one function")]
    Empty,
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate function label {0:?}")]
    DuplicateLabel(String),
    #[error("coefficient matrix: expected {expected} rows, got {got}")]
    RowCount { expected: usize, got: usize },
    #[error("coefficient row {row} has width {got}, expected {expected}")]
    RowWidth {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("expected {expected} initial values, got {got}")]
    InitialCount { expected: usize, got: usize },
    #[error("function {function} declares degree 0")]
    ZeroDegree { function: usize },
    #[error("function {function} has degree {degree} but {got} seed values")]
    SeedCount {
        function: usize,
        degree: usize,
        got: usize,
    },
}

/// A first-order system `f_i(n+1) = Σ_j a_ij · f_j(n)` with `f_i(0) = c_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSystem<K> {
    labels: Vec<String>,
    coefficients: Vec<Vec<K>>,
    initial_values: Vec<K>,
}

impl<K: Semiring> RecurrenceSystem<K> {
    pub fn new(
        coefficients: Vec<Vec<K>>,
        initial_values: Vec<K>,
    ) -> Result<Self, RecurrenceError> {
        let labels = (1..=initial_values.len()).map(|i| format!("f{i}")).collect();
        Self::with_labels(labels, coefficients, initial_values)
    }

    pub fn with_labels(
        labels: Vec<String>,
        coefficients: Vec<Vec<K>>,
        initial_values: Vec<K>,
    ) -> Result<Self, RecurrenceError> {
        let k = labels.len();
        if k == 0 {
            return Err(RecurrenceError::Empty);
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(RecurrenceError::DuplicateLabel(label.clone()));
            }
        }
        if coefficients.len() != k {
            return Err(RecurrenceError::RowCount {
                expected: k,
                got: coefficients.len(),
            });
        }
        for (row, entries) in coefficients.iter().enumerate() {
            if entries.len() != k {
                return Err(RecurrenceError::RowWidth {
                    row,
                    expected: k,
                    got: entries.len(),
                });
            }
        }
        if initial_values.len() != k {
            return Err(RecurrenceError::InitialCount {
                expected: k,
                got: initial_values.len(),
            });
        }
        Ok(RecurrenceSystem {
            labels,
            coefficients,
            initial_values,
        })
    }

    pub fn function_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coefficient(&self, i: usize, j: usize) -> &K {
        &self.coefficients[i][j]
    }

    pub fn coefficients(&self) -> &[Vec<K>] {
        &self.coefficients
    }

    pub fn initial_values(&self) -> &[K] {
        &self.initial_values
    }

    /// `(f_1(n), …, f_k(n))` by stepping the system `n` times from the
    /// initial values.
    pub fn evaluate(&self, n: usize) -> Vec<K> {
        let mut values = self.initial_values.clone();
        for _ in 0..n {
            values = mat_vec(&self.coefficients, &values);
        }
        values
    }

    /// All value vectors `f(0), f(1), …, f(max_n)` in one sweep.
    pub fn evaluate_prefix(&self, max_n: usize) -> Vec<Vec<K>> {
        let mut values = self.initial_values.clone();
        let mut prefix = Vec::with_capacity(max_n + 1);
        prefix.push(values.clone());
        for _ in 0..max_n {
            values = mat_vec(&self.coefficients, &values);
            prefix.push(values.clone());
        }
        prefix
    }

    /// The series `(f(0), …, f(N))` of one function.
    pub fn series(&self, function: usize, truncation: usize) -> SeriesPrefix<K> {
        let mut values = self.initial_values.clone();
        let mut coefficients = Vec::with_capacity(truncation + 1);
        coefficients.push(values[function].clone());
        for _ in 0..truncation {
            values = mat_vec(&self.coefficients, &values);
            coefficients.push(values[function].clone());
        }
        SeriesPrefix::new(coefficients)
    }

    /// The counting automaton whose state behaviors are exactly this
    /// system's functions. The first function becomes the initial state.
    pub fn to_automaton(&self) -> CountingAutomaton<K> {
        CountingAutomaton::with_labels(
            self.labels.clone(),
            0,
            self.initial_values.clone(),
            self.coefficients.clone(),
        )
        .expect("a valid system is a valid automaton")
    }
}

impl RecurrenceSystem<BigUint> {
    /// `Mⁿ · c` by square-and-multiply exponentiation. Agrees exactly with
    /// [`evaluate`](Self::evaluate); worthwhile when `n` is large.
    ///
    /// Only offered over the naturals: language-valued systems are always
    /// stepped so intermediate products stay graded by word length.
    pub fn evaluate_matrix_power(&self, n: usize) -> Vec<BigUint> {
        let power = mat_pow(&self.coefficients, n);
        mat_vec(&power, &self.initial_values)
    }
}

impl<K: Semiring> CountingAutomaton<K> {
    /// The recurrence system generated by this automaton: one function per
    /// state, coefficients from the transition matrix, initial values from
    /// the final weights.
    pub fn to_recurrence(&self) -> RecurrenceSystem<K> {
        RecurrenceSystem {
            labels: self.labels().to_vec(),
            coefficients: self.transition_matrix().to_vec(),
            initial_values: self.final_weights().to_vec(),
        }
    }
}

/// One equation `f(n+d) = Σ_j a_j · f_j(n)` of degree `d ≥ 1, together with
/// the seed values `f(0), …, f(d−1)`.
///
/// The seeds must be supplied by the caller: the equations alone do not
/// determine the values below the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherDegreeEquation<K> {
    pub degree: usize,
    pub coefficients: Vec<K>,
    pub seeds: Vec<K>,
}

/// A system of higher-degree equations, one per function, over the original
/// function set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherDegreeSystem<K> {
    labels: Vec<String>,
    equations: Vec<HigherDegreeEquation<K>>,
}

impl<K: Semiring> HigherDegreeSystem<K> {
    pub fn new(
        labels: Vec<String>,
        equations: Vec<HigherDegreeEquation<K>>,
    ) -> Result<Self, RecurrenceError> {
        let k = labels.len();
        if k == 0 {
            return Err(RecurrenceError::Empty);
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(RecurrenceError::DuplicateLabel(label.clone()));
            }
        }
        if equations.len() != k {
            return Err(RecurrenceError::RowCount {
                expected: k,
                got: equations.len(),
            });
        }
        for (i, equation) in equations.iter().enumerate() {
            if equation.degree == 0 {
                return Err(RecurrenceError::ZeroDegree { function: i });
            }
            if equation.coefficients.len() != k {
                return Err(RecurrenceError::RowWidth {
                    row: i,
                    expected: k,
                    got: equation.coefficients.len(),
                });
            }
            if equation.seeds.len() != equation.degree {
                return Err(RecurrenceError::SeedCount {
                    function: i,
                    degree: equation.degree,
                    got: equation.seeds.len(),
                });
            }
        }
        Ok(HigherDegreeSystem { labels, equations })
    }

    pub fn function_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn equations(&self) -> &[HigherDegreeEquation<K>] {
        &self.equations
    }

    /// Rewrites every equation of degree `d > 1` as a chain of `d − 1`
    /// auxiliary shift functions (`g_t(n) = f(n+t)`), producing an
    /// equivalent first-order system.
    ///
    /// The original functions keep their positions; auxiliaries are
    /// appended after them, ordered by original index and chain position,
    /// and labeled `<f>+1, <f>+2, …`. The returned map gives each original
    /// function's index in the new system.
    pub fn reduce_to_first_order(&self) -> (RecurrenceSystem<K>, Vec<usize>) {
        let k = self.function_count();
        let total = k + self
            .equations
            .iter()
            .map(|e| e.degree - 1)
            .sum::<usize>();

        let mut labels = self.labels.clone();
        let mut chain_start = Vec::with_capacity(k);
        for (i, equation) in self.equations.iter().enumerate() {
            chain_start.push(labels.len());
            for t in 1..equation.degree {
                labels.push(format!("{}+{}", self.labels[i], t));
            }
        }

        let zero_row = || vec![K::zero(); total];
        let mut coefficients = vec![zero_row(); total];
        let mut initial_values = vec![K::zero(); total];

        for (i, equation) in self.equations.iter().enumerate() {
            let original_row: Vec<K> = {
                let mut row = zero_row();
                row[..k].clone_from_slice(&equation.coefficients);
                row
            };
            initial_values[i] = equation.seeds[0].clone();
            if equation.degree == 1 {
                coefficients[i] = original_row;
                continue;
            }
            let start = chain_start[i];
            let end = start + equation.degree - 2;
            // f(n+1) = g_1(n), g_t(n+1) = g_{t+1}(n), and the last link
            // carries the original right-hand side.
            coefficients[i][start] = K::one();
            for g in start..end {
                coefficients[g][g + 1] = K::one();
            }
            coefficients[end] = original_row;
            for (t, seed) in equation.seeds.iter().enumerate().skip(1) {
                initial_values[start + t - 1] = seed.clone();
            }
        }

        let system = RecurrenceSystem {
            labels,
            coefficients,
            initial_values,
        };
        (system, (0..k).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::words::{Alphabet, WordSet};

    fn nat(v: u32) -> BigUint {
        BigUint::from(v)
    }

    fn nats(values: &[u32]) -> Vec<BigUint> {
        values.iter().copied().map(nat).collect()
    }

    fn ab_star_a_star() -> (Alphabet, CountingAutomaton<WordSet>) {
        let alphabet: Alphabet = "ab".parse().unwrap();
        let a = alphabet.word_set(&["a"]).unwrap();
        let b = alphabet.word_set(&["b"]).unwrap();
        let automaton = CountingAutomaton::with_labels(
            vec!["f1".into(), "f2".into()],
            0,
            vec![WordSet::epsilon(), WordSet::empty()],
            vec![vec![WordSet::empty(), a.clone()], vec![a, b]],
        )
        .unwrap();
        (alphabet, automaton)
    }

    /// f1(n+1) = f2(n), f2(n+1) = f1(n) + f2(n); f1(0) = 1, f2(0) = 0.
    fn fibonacci_system() -> RecurrenceSystem<BigUint> {
        RecurrenceSystem::new(
            vec![nats(&[0, 1]), nats(&[1, 1])],
            nats(&[1, 0]),
        )
        .unwrap()
    }

    #[test]
    fn automaton_to_recurrence_copies_structure() {
        let (alphabet, automaton) = ab_star_a_star();
        let system = automaton.to_recurrence();
        let a = alphabet.word_set(&["a"]).unwrap();
        let b = alphabet.word_set(&["b"]).unwrap();
        assert_eq!(system.labels(), automaton.labels());
        assert_eq!(system.coefficient(0, 0), &WordSet::empty());
        assert_eq!(system.coefficient(0, 1), &a);
        assert_eq!(system.coefficient(1, 0), &a);
        assert_eq!(system.coefficient(1, 1), &b);
        assert_eq!(
            system.initial_values(),
            &[WordSet::epsilon(), WordSet::empty()]
        );
    }

    #[test]
    fn identity_recurrence_from_self_loop() {
        let automaton =
            CountingAutomaton::<BigUint>::new(0, nats(&[1]), vec![nats(&[1])]).unwrap();
        let system = automaton.to_recurrence();
        for n in 0..6 {
            assert_eq!(system.evaluate(n), nats(&[1]));
        }
    }

    #[test]
    fn round_trip_is_identity() {
        let (_, automaton) = ab_star_a_star();
        assert_eq!(automaton.to_recurrence().to_automaton(), automaton);

        let system = fibonacci_system();
        assert_eq!(system.to_automaton().to_recurrence(), system);
    }

    #[test]
    fn fibonacci_system_automaton_has_unit_weights() {
        let automaton = fibonacci_system().to_automaton();
        assert_eq!(automaton.initial_index(), 0);
        assert_eq!(automaton.transition_weight(0, 1), &nat(1));
        assert_eq!(automaton.transition_weight(1, 0), &nat(1));
        assert_eq!(automaton.transition_weight(1, 1), &nat(1));
        assert_eq!(automaton.transition_weight(0, 0), &nat(0));
        assert_eq!(automaton.final_weights(), &nats(&[1, 0])[..]);
    }

    #[test]
    fn empty_language_base_system() {
        // f1(n+1) = ∅·f1(n), f1(0) = ∅ recognizes the empty language.
        let system = RecurrenceSystem::new(
            vec![vec![WordSet::empty()]],
            vec![WordSet::empty()],
        )
        .unwrap();
        let automaton = system.to_automaton();
        for n in 0..5 {
            assert_eq!(automaton.behavior(n), WordSet::empty());
        }
    }

    #[test]
    fn evaluate_base_case_returns_initial_vector() {
        let system = fibonacci_system();
        assert_eq!(system.evaluate(0), nats(&[1, 0]));
    }

    #[test]
    fn fibonacci_values() {
        let system = fibonacci_system();
        // f1(n) = F_{n−1} for n ≥ 1; F_5 = 5 shows up at n = 6.
        assert_eq!(system.evaluate(6)[0], nat(5));
    }

    #[test]
    fn language_system_reproduces_cross_section() {
        let (alphabet, automaton) = ab_star_a_star();
        let system = automaton.to_recurrence();
        assert_eq!(
            system.evaluate(4)[0],
            alphabet.word_set(&["aaaa", "abba"]).unwrap()
        );
    }

    #[test]
    fn evaluate_agrees_with_state_behaviors() {
        let (_, automaton) = ab_star_a_star();
        let system = automaton.to_recurrence();
        for n in 0..=8 {
            assert_eq!(system.evaluate(n), automaton.state_behaviors(n));
        }
    }

    #[test]
    fn matrix_power_identity_at_zero() {
        let system = fibonacci_system();
        assert_eq!(system.evaluate_matrix_power(0), nats(&[1, 0]));
    }

    #[test]
    fn matrix_power_polynomial_density_system() {
        // Upper-triangular system counting a*ba*ba*: f1(n) = n(n−1)/2.
        let system = RecurrenceSystem::new(
            vec![nats(&[1, 1, 0]), nats(&[0, 1, 1]), nats(&[0, 0, 1])],
            nats(&[0, 0, 1]),
        )
        .unwrap();
        assert_eq!(system.evaluate_matrix_power(10)[0], nat(45));
    }

    #[test]
    fn matrix_power_matches_stepping() {
        let system = fibonacci_system();
        // F_49, computed by an independent addition loop.
        let mut prev = BigUint::from(0u32);
        let mut curr = BigUint::from(1u32);
        for _ in 0..48 {
            let next = &prev + &curr;
            prev = curr;
            curr = next;
        }
        assert_eq!(curr, "7778742049".parse().unwrap());
        assert_eq!(system.evaluate_matrix_power(50)[0], curr);
        for n in [0, 1, 2, 7, 31, 50] {
            assert_eq!(system.evaluate_matrix_power(n), system.evaluate(n));
        }
    }

    #[test]
    fn series_matches_evaluate() {
        let system = fibonacci_system();
        let series = system.series(0, 10);
        for n in 0..=10 {
            assert_eq!(series.coefficient(n), Some(&system.evaluate(n)[0]));
        }
    }

    fn degree_four_example() -> HigherDegreeSystem<BigUint> {
        // f1(n+4) = 2·f2(n); f2(n+1) = 3·f1(n) + 5·f2(n).
        HigherDegreeSystem::new(
            vec!["f1".into(), "f2".into()],
            vec![
                HigherDegreeEquation {
                    degree: 4,
                    coefficients: nats(&[0, 2]),
                    seeds: nats(&[1, 4, 1, 5]),
                },
                HigherDegreeEquation {
                    degree: 1,
                    coefficients: nats(&[3, 5]),
                    seeds: nats(&[9]),
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn degree_four_reduces_to_five_chained_functions() {
        let (system, map) = degree_four_example().reduce_to_first_order();
        assert_eq!(system.function_count(), 5);
        assert_eq!(map, vec![0, 1]);
        assert_eq!(
            system.labels(),
            &["f1", "f2", "f1+1", "f1+2", "f1+3"]
        );
        // f1(n+1) = g1(n); g1(n+1) = g2(n); g2(n+1) = g3(n);
        // g3(n+1) = 2·f2(n); f2 row is untouched.
        assert_eq!(system.coefficients()[0], nats(&[0, 0, 1, 0, 0]));
        assert_eq!(system.coefficients()[2], nats(&[0, 0, 0, 1, 0]));
        assert_eq!(system.coefficients()[3], nats(&[0, 0, 0, 0, 1]));
        assert_eq!(system.coefficients()[4], nats(&[0, 2, 0, 0, 0]));
        assert_eq!(system.coefficients()[1], nats(&[3, 5, 0, 0, 0]));
        assert_eq!(system.initial_values(), &nats(&[1, 9, 4, 1, 5])[..]);
    }

    #[test]
    fn degree_one_system_is_unchanged() {
        let system = HigherDegreeSystem::new(
            vec!["f1".into(), "f2".into()],
            vec![
                HigherDegreeEquation {
                    degree: 1,
                    coefficients: nats(&[0, 1]),
                    seeds: nats(&[1]),
                },
                HigherDegreeEquation {
                    degree: 1,
                    coefficients: nats(&[1, 1]),
                    seeds: nats(&[0]),
                },
            ],
        )
        .unwrap();
        let (reduced, map) = system.reduce_to_first_order();
        assert_eq!(reduced, fibonacci_system().clone());
        assert_eq!(map, vec![0, 1]);
    }

    #[test]
    fn two_term_scalar_recurrence_alternates() {
        // f(n+2) = f(n), f(0) = 3, f(1) = 7.
        let system = HigherDegreeSystem::new(
            vec!["f".into()],
            vec![HigherDegreeEquation {
                degree: 2,
                coefficients: nats(&[1]),
                seeds: nats(&[3, 7]),
            }],
        )
        .unwrap();
        let (reduced, _) = system.reduce_to_first_order();
        assert_eq!(reduced.function_count(), 2);
        let values: Vec<BigUint> = (0..6).map(|n| reduced.evaluate(n)[0].clone()).collect();
        assert_eq!(values, nats(&[3, 7, 3, 7, 3, 7]));
    }

    #[test]
    fn missing_seeds_are_rejected() {
        let err = HigherDegreeSystem::new(
            vec!["f".into()],
            vec![HigherDegreeEquation {
                degree: 3,
                coefficients: nats(&[1]),
                seeds: nats(&[3]),
            }],
        )
        .unwrap_err();
        assert_eq!(
            err,
            RecurrenceError::SeedCount {
                function: 0,
                degree: 3,
                got: 1
            }
        );
    }

    /// Direct unrolling of the higher-degree equations, independent of the
    /// reduction: f_i(m) = seeds for m < d_i, else Σ_j a_ij · f_j(m − d_i).
    fn unroll(system: &HigherDegreeSystem<BigUint>, max_n: usize) -> Vec<Vec<BigUint>> {
        let k = system.function_count();
        let mut values: Vec<Vec<BigUint>> = vec![Vec::new(); k];
        for m in 0..=max_n {
            for i in 0..k {
                let equation = &system.equations()[i];
                let value = if m < equation.degree {
                    equation.seeds[m].clone()
                } else {
                    let back = m - equation.degree;
                    let mut acc = BigUint::from(0u32);
                    for (j, coefficient) in equation.coefficients.iter().enumerate() {
                        acc += coefficient * &values[j][back];
                    }
                    acc
                };
                values[i].push(value);
            }
        }
        values
    }

    #[test]
    fn reduction_agrees_with_direct_unrolling() {
        let system = degree_four_example();
        let (reduced, map) = system.reduce_to_first_order();
        let expected = unroll(&system, 20);
        for n in 0..=20 {
            let values = reduced.evaluate(n);
            for (original, &new_index) in map.iter().enumerate() {
                assert_eq!(values[new_index], expected[original][n], "f{original} at {n}");
            }
        }
    }
}
