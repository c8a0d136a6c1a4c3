//! Closure constructions and the regex-to-automaton compiler.
//!
//! Languages recognized by counting automata over letter sets are closed
//! under union, concatenation, and Kleene star, and the constructions are
//! purely structural: copy the operand machines, thread fresh or existing
//! states together, and merge parallel edges by letter-set union. Together
//! with three fixed base machines (for `∅`, `{ε}`, and `{a}`) this compiles
//! every regular expression to a language automaton.
//!
//! Surface syntax: letters are single alphanumeric characters, `|` is
//! union, juxtaposition concatenates, postfix `*` is star, `!` denotes `∅`,
//! `&` denotes `ε`, parentheses group, whitespace is ignored.

use std::fmt;

use thiserror::Error;

use crate::language::LanguageAutomaton;
use crate::semiring::words::{Alphabet, LetterSet};

/// Abstract syntax of the regular-expression surface language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegexAst {
    EmptySet,
    Epsilon,
    Letter(char),
    Union(Box<RegexAst>, Box<RegexAst>),
    Concat(Box<RegexAst>, Box<RegexAst>),
    Star(Box<RegexAst>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    UnexpectedToken(char),
    UnknownLetter(char),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnexpectedToken(c) => write!(f, "unexpected {c:?}"),
            ParseErrorKind::UnknownLetter(c) => write!(f, "unknown letter {c:?}"),
        }
    }
}

/// A syntax error, with a 1-based character position into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {kind}")]
pub struct RegexParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("operand alphabets differ")]
    AlphabetMismatch,
    #[error("letter {letter:?} is not in the alphabet")]
    LetterNotInAlphabet { letter: char },
}

struct Parser {
    tokens: Vec<(usize, char)>,
    cursor: usize,
    end_position: usize,
}

impl Parser {
    fn new(text: &str) -> Parser {
        let tokens: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Parser {
            tokens,
            cursor: 0,
            end_position: text.chars().count() + 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.tokens.get(self.cursor).map(|(_, c)| *c)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(self.end_position)
    }

    fn bump(&mut self) -> Option<char> {
        let token = self.peek();
        if token.is_some() {
            self.cursor += 1;
        }
        token
    }

    fn error(&self, kind: ParseErrorKind) -> RegexParseError {
        RegexParseError {
            position: self.position(),
            kind,
        }
    }

    fn parse_union(&mut self) -> Result<RegexAst, RegexParseError> {
        let mut ast = self.parse_concat()?;
        while self.peek() == Some('|') {
            self.bump();
            let rhs = self.parse_concat()?;
            ast = RegexAst::Union(Box::new(ast), Box::new(rhs));
        }
        Ok(ast)
    }

    fn parse_concat(&mut self) -> Result<RegexAst, RegexParseError> {
        let mut ast = self.parse_postfix()?;
        while matches!(self.peek(), Some(c) if starts_atom(c)) {
            let rhs = self.parse_postfix()?;
            ast = RegexAst::Concat(Box::new(ast), Box::new(rhs));
        }
        Ok(ast)
    }

    fn parse_postfix(&mut self) -> Result<RegexAst, RegexParseError> {
        let mut ast = self.parse_atom()?;
        while self.peek() == Some('*') {
            self.bump();
            ast = RegexAst::Star(Box::new(ast));
        }
        Ok(ast)
    }

    fn parse_atom(&mut self) -> Result<RegexAst, RegexParseError> {
        match self.peek() {
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
            Some('(') => {
                self.bump();
                let inner = self.parse_union()?;
                if self.peek() != Some(')') {
                    return Err(self.error(match self.peek() {
                        None => ParseErrorKind::UnexpectedEnd,
                        Some(c) => ParseErrorKind::UnexpectedToken(c),
                    }));
                }
                self.bump();
                Ok(inner)
            }
            Some('!') => {
                self.bump();
                Ok(RegexAst::EmptySet)
            }
            Some('&') => {
                self.bump();
                Ok(RegexAst::Epsilon)
            }
            Some(c) if c.is_alphanumeric() => {
                self.bump();
                Ok(RegexAst::Letter(c))
            }
            Some(c) if matches!(c, ')' | '|' | '*') => {
                Err(self.error(ParseErrorKind::UnexpectedToken(c)))
            }
            Some(c) => Err(self.error(ParseErrorKind::UnknownLetter(c))),
        }
    }
}

fn starts_atom(c: char) -> bool {
    c == '(' || c == '!' || c == '&' || c.is_alphanumeric()
}

/// Parses the surface syntax. Star binds tighter than concatenation, which
/// binds tighter than union.
pub fn parse_regex(text: &str) -> Result<RegexAst, RegexParseError> {
    let mut parser = Parser::new(text);
    let ast = parser.parse_union()?;
    match parser.peek() {
        None => Ok(ast),
        Some(c) if starts_atom(c) || matches!(c, ')' | '|' | '*') => {
            Err(parser.error(ParseErrorKind::UnexpectedToken(c)))
        }
        Some(c) => Err(parser.error(ParseErrorKind::UnknownLetter(c))),
    }
}

fn merge(cell: &mut LetterSet, addition: &LetterSet) {
    if !addition.is_empty() {
        *cell = cell.union(addition);
    }
}

fn empty_matrix(size: usize) -> Vec<Vec<LetterSet>> {
    vec![vec![LetterSet::empty(); size]; size]
}

fn build(
    alphabet: &Alphabet,
    finals: Vec<bool>,
    matrix: Vec<Vec<LetterSet>>,
    initial: usize,
) -> LanguageAutomaton {
    LanguageAutomaton::with_default_labels(alphabet.clone(), initial, finals, matrix)
        .expect("construction output is structurally valid")
}

/// An automaton recognizing `L(a) ∪ L(b)`.
///
/// A fresh initial state is placed first; it copies the out-edges of both
/// old initial states and is final exactly when one of them was. The
/// operand machines follow unchanged, `a`'s states before `b`'s, relabeled
/// `q1..qN` in that order.
pub fn union(
    a: &LanguageAutomaton,
    b: &LanguageAutomaton,
) -> Result<LanguageAutomaton, ClosureError> {
    if a.alphabet() != b.alphabet() {
        return Err(ClosureError::AlphabetMismatch);
    }
    let (k, m) = (a.state_count(), b.state_count());
    let (off_a, off_b) = (1, 1 + k);
    let size = 1 + k + m;

    let mut matrix = empty_matrix(size);
    for i in 0..k {
        for j in 0..k {
            matrix[off_a + i][off_a + j] = a.letter_set(i, j).clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            matrix[off_b + i][off_b + j] = b.letter_set(i, j).clone();
        }
    }
    for j in 0..k {
        merge(&mut matrix[0][off_a + j], a.letter_set(a.initial_index(), j));
    }
    for j in 0..m {
        merge(&mut matrix[0][off_b + j], b.letter_set(b.initial_index(), j));
    }

    let mut finals = vec![false; size];
    finals[0] = a.is_final(a.initial_index()) || b.is_final(b.initial_index());
    for i in 0..k {
        finals[off_a + i] = a.is_final(i);
    }
    for i in 0..m {
        finals[off_b + i] = b.is_final(i);
    }

    Ok(build(a.alphabet(), finals, matrix, 0))
}

/// An automaton recognizing `L(a) · L(b)`.
///
/// Every transition of `a` into one of its final states is duplicated as a
/// transition into `b`'s initial state; if `a` accepts `ε`, `b`'s initial
/// out-edges are copied onto `a`'s initial state. `a`'s states keep their
/// positions (and its initial state stays initial), `b`'s follow, relabeled
/// `q1..qN`.
pub fn concat(
    a: &LanguageAutomaton,
    b: &LanguageAutomaton,
) -> Result<LanguageAutomaton, ClosureError> {
    if a.alphabet() != b.alphabet() {
        return Err(ClosureError::AlphabetMismatch);
    }
    let (k, m) = (a.state_count(), b.state_count());
    let off_b = k;
    let size = k + m;
    let a_finals = a.final_states();
    let a_accepts_epsilon = a.is_final(a.initial_index());
    let b_accepts_epsilon = b.is_final(b.initial_index());

    let mut matrix = empty_matrix(size);
    for i in 0..k {
        for j in 0..k {
            matrix[i][j] = a.letter_set(i, j).clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            matrix[off_b + i][off_b + j] = b.letter_set(i, j).clone();
        }
    }
    // f_i --L--> g_1, where L collects the weights of f_i's edges into
    // final states of a.
    for i in 0..k {
        let mut into_finals = LetterSet::empty();
        for &f in &a_finals {
            into_finals = into_finals.union(a.letter_set(i, f));
        }
        merge(&mut matrix[i][off_b + b.initial_index()], &into_finals);
    }
    if a_accepts_epsilon {
        for j in 0..m {
            merge(
                &mut matrix[a.initial_index()][off_b + j],
                b.letter_set(b.initial_index(), j),
            );
        }
    }

    let mut finals = vec![false; size];
    for i in 0..m {
        finals[off_b + i] = b.is_final(i);
    }
    if a_accepts_epsilon && b_accepts_epsilon {
        finals[a.initial_index()] = true;
    }

    Ok(build(a.alphabet(), finals, matrix, a.initial_index()))
}

/// An automaton recognizing `L(a)*`.
///
/// A fresh initial (and final) state is placed first and copies the old
/// initial state's out-edges; every final state of `a` also receives those
/// out-edges, closing the loop. States are relabeled `q1..qN`.
pub fn star(a: &LanguageAutomaton) -> LanguageAutomaton {
    let k = a.state_count();
    let off = 1;
    let size = 1 + k;

    let mut matrix = empty_matrix(size);
    for i in 0..k {
        for j in 0..k {
            matrix[off + i][off + j] = a.letter_set(i, j).clone();
        }
    }
    for j in 0..k {
        let weight = a.letter_set(a.initial_index(), j).clone();
        merge(&mut matrix[0][off + j], &weight);
        for &f in &a.final_states() {
            merge(&mut matrix[off + f][off + j], &weight);
        }
    }

    let mut finals = vec![false; size];
    finals[0] = true;
    for i in 0..k {
        finals[off + i] = a.is_final(i);
    }

    build(a.alphabet(), finals, matrix, 0)
}

/// Compiles an AST by structural induction: fixed one- and two-state base
/// machines for `∅`, `{ε}`, and `{a}`, then [`union`], [`concat`], and
/// [`star`] for the operators.
pub fn compile_regex(
    ast: &RegexAst,
    alphabet: &Alphabet,
) -> Result<LanguageAutomaton, ClosureError> {
    let single_state = |is_final: bool| {
        LanguageAutomaton::with_default_labels(
            alphabet.clone(),
            0,
            vec![is_final],
            vec![vec![LetterSet::empty()]],
        )
        .expect("one-state machine is valid")
    };
    match ast {
        RegexAst::EmptySet => Ok(single_state(false)),
        RegexAst::Epsilon => Ok(single_state(true)),
        RegexAst::Letter(symbol) => {
            let letter = alphabet
                .letter(*symbol)
                .ok_or(ClosureError::LetterNotInAlphabet { letter: *symbol })?;
            let mut matrix = empty_matrix(2);
            matrix[0][1] = LetterSet::singleton(letter);
            Ok(build(alphabet, vec![false, true], matrix, 0))
        }
        RegexAst::Union(lhs, rhs) => union(
            &compile_regex(lhs, alphabet)?,
            &compile_regex(rhs, alphabet)?,
        ),
        RegexAst::Concat(lhs, rhs) => concat(
            &compile_regex(lhs, alphabet)?,
            &compile_regex(rhs, alphabet)?,
        ),
        RegexAst::Star(inner) => Ok(star(&compile_regex(inner, alphabet)?)),
    }
}

/// Parses and compiles in one step.
pub fn compile(text: &str, alphabet: &Alphabet) -> Result<LanguageAutomaton, CompileFailure> {
    let ast = parse_regex(text)?;
    Ok(compile_regex(&ast, alphabet)?)
}

/// Either stage of [`compile`] failing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileFailure {
    #[error(transparent)]
    Parse(#[from] RegexParseError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}
