//! Path counting and the density function of a regular language.
//!
//! The *path-counting automaton* of a machine replaces every non-zero
//! transition weight by 1 and every final weight by 1, giving an automaton
//! over the naturals whose behavior at `n` is the number of successful
//! length-`n` paths. Pairing it with the source machine over the product
//! semiring yields the *self-counting automaton*, which tracks path weights
//! and path counts side by side.
//!
//! For a deterministic language automaton no word is recognized by two
//! paths, so replacing each transition letter set by its cardinality turns
//! the recognition system into an integer recurrence — the
//! [`DensitySystem`] — whose initial function computes `ρ(n)`, the number
//! of words of length `n`. On nondeterministic machines the same recurrence
//! only overcounts, which is why [`density`] determinizes first while
//! [`density_system`] refuses.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::automaton::{CountingAutomaton, GeneralWeightedAutomaton};
use crate::language::{LanguageAutomaton, LanguageError};
use crate::recurrence::RecurrenceSystem;
use crate::semiring::Semiring;

/// Default tail-window width for growth classification.
pub const DEFAULT_GROWTH_WINDOW: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("density system requires a deterministic automaton; determinize first")]
    NotDeterministic,
    #[error("prefix of length {got} is too short for window {window} (needs {needed})")]
    PrefixTooShort {
        got: usize,
        window: usize,
        needed: usize,
    },
    #[error(transparent)]
    Language(#[from] LanguageError),
}

/// The 0/1-weighted shadow of a counting automaton: its behavior at `n` is
/// the number of successful length-`n` paths of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCountingAutomaton {
    inner: CountingAutomaton<BigUint>,
}

impl PathCountingAutomaton {
    pub fn counting(&self) -> &CountingAutomaton<BigUint> {
        &self.inner
    }

    pub fn into_counting(self) -> CountingAutomaton<BigUint> {
        self.inner
    }

    /// Number of successful paths of length `n` in the source automaton.
    pub fn count_at(&self, n: usize) -> BigUint {
        self.inner.behavior(n)
    }
}

/// Builds the path-counting automaton: transition weights become 1 where
/// the source weight is non-zero, final weights become 1 where the source
/// state is final.
pub fn path_counting<K: Semiring>(source: &CountingAutomaton<K>) -> PathCountingAutomaton {
    let one = BigUint::from(1u32);
    let zero = BigUint::from(0u32);
    let finals = source
        .final_weights()
        .iter()
        .map(|w| if w.is_zero() { zero.clone() } else { one.clone() })
        .collect();
    let transitions = source
        .transition_matrix()
        .iter()
        .map(|row| {
            row.iter()
                .map(|w| if w.is_zero() { zero.clone() } else { one.clone() })
                .collect()
        })
        .collect();
    let inner = CountingAutomaton::with_labels(
        source.labels().to_vec(),
        source.initial_index(),
        finals,
        transitions,
    )
    .expect("source shape is preserved");
    PathCountingAutomaton { inner }
}

/// A counting automaton over `K × ℕ` whose first coordinate mimics the
/// source and whose second coordinate counts its successful paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfCountingAutomaton<K> {
    inner: CountingAutomaton<(K, BigUint)>,
}

impl<K: Semiring> SelfCountingAutomaton<K> {
    pub fn counting(&self) -> &CountingAutomaton<(K, BigUint)> {
        &self.inner
    }

    /// `(‖A‖(xⁿ), number of successful length-n paths)`.
    pub fn behavior(&self, n: usize) -> (K, BigUint) {
        self.inner.behavior(n)
    }

    /// First projection: the source automaton.
    pub fn project_weights(&self) -> CountingAutomaton<K> {
        CountingAutomaton::with_labels(
            self.inner.labels().to_vec(),
            self.inner.initial_index(),
            self.inner
                .final_weights()
                .iter()
                .map(|(w, _)| w.clone())
                .collect(),
            self.inner
                .transition_matrix()
                .iter()
                .map(|row| row.iter().map(|(w, _)| w.clone()).collect())
                .collect(),
        )
        .expect("projection preserves shape")
    }

    /// Second projection: the path-counting automaton of the source.
    pub fn project_counts(&self) -> PathCountingAutomaton {
        let inner = CountingAutomaton::with_labels(
            self.inner.labels().to_vec(),
            self.inner.initial_index(),
            self.inner
                .final_weights()
                .iter()
                .map(|(_, c)| c.clone())
                .collect(),
            self.inner
                .transition_matrix()
                .iter()
                .map(|row| row.iter().map(|(_, c)| c.clone()).collect())
                .collect(),
        )
        .expect("projection preserves shape");
        PathCountingAutomaton { inner }
    }
}

/// Pairs a machine with its path-counting shadow over the product semiring
/// `K × ℕ`: weights `(a_ij, ā_ij)`, final weights `(φ_i, c̄_i)`.
pub fn self_counting<K: Semiring>(source: &CountingAutomaton<K>) -> SelfCountingAutomaton<K> {
    let shadow = path_counting(source);
    let finals = source
        .final_weights()
        .iter()
        .cloned()
        .zip(shadow.counting().final_weights().iter().cloned())
        .collect();
    let transitions = source
        .transition_matrix()
        .iter()
        .zip(shadow.counting().transition_matrix())
        .map(|(row, shadow_row)| {
            row.iter()
                .cloned()
                .zip(shadow_row.iter().cloned())
                .collect()
        })
        .collect();
    let inner = CountingAutomaton::with_labels(
        source.labels().to_vec(),
        source.initial_index(),
        finals,
        transitions,
    )
    .expect("source shape is preserved");
    SelfCountingAutomaton { inner }
}

/// Identifies all letters of a multi-letter weighted automaton: the result
/// has a single transition matrix, the semiring sum `Σ_x τ(x)`.
///
/// Successful paths do not depend on labels, so applied to 0/1 per-letter
/// weights this preserves labeled-path counts.
pub fn collapse_alphabet<K: Semiring>(
    source: &GeneralWeightedAutomaton<K>,
) -> CountingAutomaton<K> {
    let k = source.state_count();
    let mut matrix = vec![vec![K::zero(); k]; k];
    for letter in 0..source.letters().len() {
        let per_letter = source.matrix(letter);
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = cell.add(&per_letter[i][j]);
            }
        }
    }
    CountingAutomaton::with_labels(
        source.labels().to_vec(),
        source.initial_index(),
        source.final_weights().to_vec(),
        matrix,
    )
    .expect("source shape is preserved")
}

/// The cardinality recurrence of a language automaton (deterministic or
/// not): coefficient `(i,j)` is `|L_ij|` and initial value `i` is 1 for
/// final states, 0 otherwise.
///
/// For nondeterministic machines the initial function of this system only
/// bounds the density from above: a word recognized along several paths is
/// counted once per path.
pub fn cardinality_system(source: &LanguageAutomaton) -> RecurrenceSystem<BigUint> {
    let k = source.state_count();
    let coefficients = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| BigUint::from(source.letter_set(i, j).len()))
                .collect()
        })
        .collect();
    let initial_values = (0..k)
        .map(|i| BigUint::from(source.is_final(i) as u32))
        .collect();
    RecurrenceSystem::with_labels(source.labels().to_vec(), coefficients, initial_values)
        .expect("source shape is preserved")
}

/// The integer recurrence computing a language's density function, tied to
/// the deterministic automaton it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensitySystem {
    system: RecurrenceSystem<BigUint>,
    initial: usize,
}

impl DensitySystem {
    pub fn system(&self) -> &RecurrenceSystem<BigUint> {
        &self.system
    }

    /// Index of the function that computes the density.
    pub fn initial_index(&self) -> usize {
        self.initial
    }

    /// `ρ(n)` by matrix power.
    pub fn value_at(&self, n: usize) -> BigUint {
        self.system
            .evaluate_matrix_power(n)
            .swap_remove(self.initial)
    }

    /// `ρ(0), …, ρ(max_n)` by step iteration.
    pub fn prefix(&self, max_n: usize) -> Vec<BigUint> {
        self.system
            .evaluate_prefix(max_n)
            .into_iter()
            .map(|mut values| values.swap_remove(self.initial))
            .collect()
    }
}

/// The density system of a deterministic language automaton.
///
/// Errors with [`DensityError::NotDeterministic`] otherwise, since the
/// cardinality recurrence overcounts words recognized by several paths;
/// determinize first, or use [`density`] which does so itself.
pub fn density_system(source: &LanguageAutomaton) -> Result<DensitySystem, DensityError> {
    if !source.is_deterministic() {
        return Err(DensityError::NotDeterministic);
    }
    Ok(DensitySystem {
        system: cardinality_system(source),
        initial: source.initial_index(),
    })
}

fn density_system_for(source: &LanguageAutomaton) -> Result<DensitySystem, DensityError> {
    if source.is_deterministic() {
        density_system(source)
    } else {
        let deterministic = source.determinize()?;
        density_system(&deterministic)
    }
}

/// `ρ(n)`, the number of words of length `n` recognized by the automaton.
/// Nondeterministic inputs are determinized internally.
pub fn density(source: &LanguageAutomaton, n: usize) -> Result<BigUint, DensityError> {
    Ok(density_system_for(source)?.value_at(n))
}

/// `ρ(0), …, ρ(max_n)` in one sweep. Nondeterministic inputs are
/// determinized internally.
pub fn density_prefix(
    source: &LanguageAutomaton,
    max_n: usize,
) -> Result<Vec<BigUint>, DensityError> {
    Ok(density_system_for(source)?.prefix(max_n))
}

/// Heuristic growth classes for a density prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthClass {
    Zero,
    Bounded,
    Polynomial(usize),
    Exponential,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::Zero => write!(f, "zero"),
            GrowthClass::Bounded => write!(f, "bounded"),
            GrowthClass::Polynomial(degree) => write!(f, "polynomial({degree})"),
            GrowthClass::Exponential => write!(f, "exponential"),
        }
    }
}

fn ratio(num: &BigUint, den: &BigUint) -> Option<f64> {
    if Zero::is_zero(den) {
        return None;
    }
    ((num * 1_000_000u32) / den)
        .to_u64()
        .map(|scaled| scaled as f64 / 1e6)
}

/// Classifies the growth of a density prefix from its tail. Heuristic from
/// a finite prefix — it cannot prove a class, only recognize its shape.
///
/// In order: all zero ⇒ `Zero`; constant tail ⇒ `Bounded`; tail ratios
/// settled within 1% of a limit `c > 1` (relative to the margin `c − 1`)
/// ⇒ `Exponential`; `d`-th finite differences constant over the tail ⇒
/// `Polynomial(d)`. A tail that grew past everything before it falls back
/// to `Exponential`, anything else to `Bounded`.
///
/// Needs `prefix.len() ≥ 2·window + 4`.
pub fn estimate_growth(prefix: &[BigUint], window: usize) -> Result<GrowthClass, DensityError> {
    assert!(window >= 1, "window must be at least 1");
    let needed = 2 * window + 4;
    if prefix.len() < needed {
        return Err(DensityError::PrefixTooShort {
            got: prefix.len(),
            window,
            needed,
        });
    }

    if prefix.iter().all(Zero::is_zero) {
        return Ok(GrowthClass::Zero);
    }

    let tail = &prefix[prefix.len() - window..];
    if tail.windows(2).all(|pair| pair[0] == pair[1]) {
        return Ok(GrowthClass::Bounded);
    }

    let steps = &prefix[prefix.len() - window - 1..];
    let ratios: Option<Vec<f64>> = steps
        .windows(2)
        .map(|pair| ratio(&pair[1], &pair[0]))
        .collect();
    if let Some(ratios) = ratios {
        let c = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let spread = ratios
            .iter()
            .map(|r| (r - c).abs())
            .fold(0.0f64, f64::max);
        if c > 1.0 && spread <= 0.01 * (c - 1.0) {
            return Ok(GrowthClass::Exponential);
        }
    }

    let mut differences: Vec<BigInt> = prefix.iter().map(|v| BigInt::from(v.clone())).collect();
    for degree in 1..=window {
        differences = differences
            .windows(2)
            .map(|pair| &pair[1] - &pair[0])
            .collect();
        let tail = &differences[differences.len() - window..];
        if tail.windows(2).all(|pair| pair[0] == pair[1]) {
            return Ok(GrowthClass::Polynomial(degree));
        }
    }

    // Nothing matched; oscillating tails that stopped growing read as
    // bounded, anything still climbing as exponential.
    let tail_max = tail.iter().max().unwrap();
    let head_max = prefix[..prefix.len() - window].iter().max().unwrap();
    if tail_max <= head_max {
        Ok(GrowthClass::Bounded)
    } else {
        Ok(GrowthClass::Exponential)
    }
}
