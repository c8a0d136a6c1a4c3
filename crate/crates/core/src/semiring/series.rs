//! Truncated formal power series over a one-letter alphabet.
//!
//! A series over `{x}` is just a function `n -> K`; a [`SeriesPrefix`] keeps
//! its first `N + 1` coefficients. Addition is pointwise and multiplication
//! is the Cauchy product, truncated at `N`. Behaviors of counting automata
//! are series, and the prefix form keeps equality between them decidable.

use thiserror::Error;

use super::Semiring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series truncation lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// The coefficients `(c_0, …, c_N)` of a formal power series, truncated at
/// degree `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPrefix<K> {
    coefficients: Vec<K>,
}

impl<K: Semiring> SeriesPrefix<K> {
    /// Wraps explicit coefficients `(c_0, …, c_N)`. Panics if empty.
    pub fn new(coefficients: Vec<K>) -> SeriesPrefix<K> {
        assert!(!coefficients.is_empty(), "a series prefix holds c_0 at least");
        SeriesPrefix { coefficients }
    }

    /// The zero series `𝟎`, truncated at degree `truncation`.
    pub fn zeros(truncation: usize) -> SeriesPrefix<K> {
        SeriesPrefix {
            coefficients: vec![K::zero(); truncation + 1],
        }
    }

    /// The multiplicative identity `𝛆`: one at degree 0, zero elsewhere.
    pub fn epsilon(truncation: usize) -> SeriesPrefix<K> {
        let mut coefficients = vec![K::zero(); truncation + 1];
        coefficients[0] = K::one();
        SeriesPrefix { coefficients }
    }

    /// Highest coefficient index `N`.
    pub fn truncation(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, n: usize) -> Option<&K> {
        self.coefficients.get(n)
    }

    pub fn coefficients(&self) -> &[K] {
        &self.coefficients
    }

    fn check_lengths(&self, other: &SeriesPrefix<K>) -> Result<(), SeriesError> {
        if self.coefficients.len() != other.coefficients.len() {
            return Err(SeriesError::LengthMismatch {
                left: self.truncation(),
                right: other.truncation(),
            });
        }
        Ok(())
    }

    /// Pointwise sum.
    pub fn add(&self, other: &SeriesPrefix<K>) -> Result<SeriesPrefix<K>, SeriesError> {
        self.check_lengths(other)?;
        Ok(SeriesPrefix {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    /// Cauchy product: coefficient `n` of the result is
    /// `Σ_{p+q=n} self_p · other_q`, for `n` up to the truncation.
    pub fn cauchy_product(&self, other: &SeriesPrefix<K>) -> Result<SeriesPrefix<K>, SeriesError> {
        self.check_lengths(other)?;
        let coefficients = (0..self.coefficients.len())
            .map(|n| {
                let mut acc = K::zero();
                for p in 0..=n {
                    acc = acc.add(&self.coefficients[p].mul(&other.coefficients[n - p]));
                }
                acc
            })
            .collect();
        Ok(SeriesPrefix { coefficients })
    }
}
