//! Alphabets, words, and the finite-language semiring.
//!
//! Letters are indices into a declared [`Alphabet`], so the declaration
//! order is the canonical sort order everywhere: word sets, letter sets,
//! and all rendered output follow it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::Semiring;

/// Errors from declaring an alphabet or interpreting text against one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(char),
    #[error("alphabet holds at most {} symbols", Alphabet::MAX_SYMBOLS)]
    TooManySymbols,
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
}

/// A declared, ordered, finite alphabet of single-character symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub const MAX_SYMBOLS: usize = 255;

    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self, AlphabetError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.len() > Self::MAX_SYMBOLS {
            return Err(AlphabetError::TooManySymbols);
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(AlphabetError::DuplicateSymbol(*c));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// All letters, in declaration order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.symbols.len()).map(|i| Letter(i as u8))
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    /// The letter a symbol denotes, if declared.
    pub fn letter(&self, symbol: char) -> Option<Letter> {
        self.symbols
            .iter()
            .position(|c| *c == symbol)
            .map(|i| Letter(i as u8))
    }

    /// The symbol behind a letter.
    ///
    /// Panics if the letter came from a larger alphabet.
    pub fn symbol(&self, letter: Letter) -> char {
        self.symbols[letter.index()]
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.symbols.len()
    }

    /// Reads a word, one declared symbol per character.
    pub fn word(&self, text: &str) -> Result<Word, AlphabetError> {
        text.chars()
            .map(|c| self.letter(c).ok_or(AlphabetError::UnknownSymbol(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    /// Reads a set of words.
    pub fn word_set<S: AsRef<str>>(&self, texts: &[S]) -> Result<WordSet, AlphabetError> {
        texts
            .iter()
            .map(|t| self.word(t.as_ref()))
            .collect::<Result<_, _>>()
    }

    /// Reads a set of single-symbol letters, e.g. from `"ab"`.
    pub fn letter_set(&self, symbols: &str) -> Result<LetterSet, AlphabetError> {
        symbols
            .chars()
            .map(|c| self.letter(c).ok_or(AlphabetError::UnknownSymbol(c)))
            .collect::<Result<BTreeSet<_>, _>>()
            .map(LetterSet)
    }

    /// Renders a word back to text. The empty word renders as `""`.
    ///
    /// Panics if the word uses letters outside this alphabet.
    pub fn render(&self, word: &Word) -> String {
        word.letters().map(|l| self.symbol(l)).collect()
    }
}

impl FromStr for Alphabet {
    type Err = AlphabetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Alphabet::new(s.chars())
    }
}

/// A single symbol of an alphabet, stored as its declaration index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(index: usize) -> Letter {
        assert!(index < Alphabet::MAX_SYMBOLS, "letter index out of range");
        Letter(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A word over some alphabet. Comparison is lexicographic in declaration
/// order of the letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    /// The empty word.
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        Word(letters.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl From<Letter> for Word {
    fn from(letter: Letter) -> Word {
        Word(vec![letter])
    }
}

/// A finite set of words: an element of the language semiring.
///
/// Addition is union and multiplication is element-wise concatenation, with
/// `∅` as zero and `{ε}` as one. Sets are kept sorted and duplicate-free, so
/// equality is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordSet(BTreeSet<Word>);

impl WordSet {
    /// The empty language `∅`.
    pub fn empty() -> WordSet {
        WordSet(BTreeSet::new())
    }

    /// The language `{ε}`.
    pub fn epsilon() -> WordSet {
        WordSet(BTreeSet::from([Word::empty()]))
    }

    pub fn singleton(word: Word) -> WordSet {
        WordSet(BTreeSet::from([word]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.0.contains(word)
    }

    /// Words in sorted order.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.0.iter()
    }

    pub fn union(&self, other: &WordSet) -> WordSet {
        WordSet(self.0.union(&other.0).cloned().collect())
    }

    /// Element-wise concatenation `{uv : u ∈ self, v ∈ other}`.
    pub fn concat(&self, other: &WordSet) -> WordSet {
        let mut out = BTreeSet::new();
        for u in &self.0 {
            for v in &other.0 {
                out.insert(u.concat(v));
            }
        }
        WordSet(out)
    }
}

impl FromIterator<Word> for WordSet {
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> WordSet {
        WordSet(iter.into_iter().collect())
    }
}

impl Extend<Word> for WordSet {
    fn extend<I: IntoIterator<Item = Word>>(&mut self, iter: I) {
        self.0.extend(iter);
    }
}

impl Semiring for WordSet {
    fn zero() -> Self {
        WordSet::empty()
    }

    fn one() -> Self {
        WordSet::epsilon()
    }

    fn add(&self, other: &Self) -> Self {
        self.union(other)
    }

    fn mul(&self, other: &Self) -> Self {
        self.concat(other)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// A subset of the alphabet: a word set whose members all have length one.
///
/// Transition weights of language automata live here.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LetterSet(BTreeSet<Letter>);

impl LetterSet {
    pub fn empty() -> LetterSet {
        LetterSet(BTreeSet::new())
    }

    pub fn singleton(letter: Letter) -> LetterSet {
        LetterSet(BTreeSet::from([letter]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.0.contains(&letter)
    }

    pub fn insert(&mut self, letter: Letter) {
        self.0.insert(letter);
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &LetterSet) -> LetterSet {
        LetterSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &LetterSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// The same set as an element of the language semiring.
    pub fn to_word_set(&self) -> WordSet {
        self.0.iter().map(|l| Word::from(*l)).collect()
    }

    /// Reads a letter set back out of a word set, if every word has length
    /// exactly one.
    pub fn from_word_set(words: &WordSet) -> Option<LetterSet> {
        let mut letters = BTreeSet::new();
        for word in words.words() {
            if word.len() != 1 {
                return None;
            }
            letters.extend(word.letters());
        }
        Some(LetterSet(letters))
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> LetterSet {
        LetterSet(iter.into_iter().collect())
    }
}

impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "#{}", l.index())?;
        }
        write!(f, "}}")
    }
}
