//! Alphabets, finite automata and regular expressions.

mod alphabet;
mod dfa;
mod json;
mod nfa;
mod regex;

pub use alphabet::{Alphabet, Letter, Word};
pub use dfa::{BoolOp, Dfa};
pub use json::AutomatonJson;
pub use nfa::{Nfa, DEFAULT_STATE_LIMIT};
pub use regex::{parse_regex, regex_dfa, Regex};
