//! Counting automata over semirings and the linear recurrence systems they
//! generate.
//!
//! A *counting automaton* is a weighted automaton over a one-letter alphabet:
//! since every transition reads the same letter, the machine does not accept
//! or reject words, it aggregates the weights of all paths of a given length.
//! Each state generates a function `n -> K`, and together those functions
//! satisfy a first-order system of linear recurrence equations whose
//! coefficient matrix is the transition matrix. The two presentations are
//! interchangeable ([`automaton`] and [`recurrence`]).
//!
//! Instantiating the weight semiring with subsets of an alphabet turns a
//! counting automaton into a recognizer for a regular language that comes
//! pre-partitioned into its cross-sections: the value of the initial state's
//! function at `n` is exactly the set of words of length `n` in the language
//! ([`language`]). Regular expressions compile onto these machines through
//! the classical union/concatenation/star constructions ([`closure`]), and
//! replacing every transition weight by its cardinality yields an integer
//! recurrence that computes the language's density function, the number of
//! words of each length ([`density`]).
//!
//! ```
//! use recount::closure::{compile_regex, parse_regex};
//! use recount::density::density_prefix;
//! use recount::semiring::words::Alphabet;
//!
//! let alphabet: Alphabet = "ab".parse().unwrap();
//! let machine = compile_regex(&parse_regex("(ab*a)*").unwrap(), &alphabet).unwrap();
//!
//! // Words of length 4: aaaa and abba.
//! let section = machine.cross_section(4).unwrap();
//! assert_eq!(section.len(), 2);
//!
//! // Word counts per length follow the Fibonacci recurrence.
//! let counts = density_prefix(&machine, 8).unwrap();
//! let expected: Vec<u32> = vec![1, 0, 1, 1, 2, 3, 5, 8, 13];
//! assert!(counts.iter().zip(&expected).all(|(c, e)| c == &(*e).into()));
//! ```

pub mod automaton;
pub mod closure;
pub mod density;
pub mod language;
pub mod recurrence;
pub mod semiring;

pub(crate) mod matrix;

pub use automaton::{CountingAutomaton, GeneralWeightedAutomaton, Path};
pub use language::LanguageAutomaton;
pub use recurrence::RecurrenceSystem;
pub use semiring::Semiring;
