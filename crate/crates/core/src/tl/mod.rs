//! Unary temporal logic with language-parameterized modalities.

mod compile;
mod eval;
mod formula;
mod parse;

pub use compile::{compile, compile_with_cap};
pub use eval::{eval, language_of, satisfaction};
pub use formula::{FormulaAst, FormulaDisplay, LangParam, TlFormula};
pub use parse::parse_formula;
