use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::automata::{regex_dfa, Alphabet, Dfa, Letter};
use crate::error::{Error, Result};

/// A language parameter of a modality: a minimized DFA plus its source text.
#[derive(Clone, Debug)]
pub struct LangParam {
    dfa: Arc<Dfa>,
    source: String,
}

impl LangParam {
    pub fn new(dfa: &Dfa, source: impl Into<String>) -> Self {
        LangParam { dfa: Arc::new(dfa.minimize()), source: source.into() }
    }

    pub fn from_regex(text: &str, alphabet: &Alphabet) -> Result<Self> {
        Ok(LangParam { dfa: Arc::new(regex_dfa(text, alphabet)?), source: text.trim().to_string() })
    }

    /// A* as a parameter.
    pub fn all(alphabet: &Alphabet) -> Self {
        LangParam::new(&Dfa::universal(alphabet), "")
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

impl PartialEq for LangParam {
    fn eq(&self, other: &Self) -> bool {
        self.dfa == other.dfa
    }
}

impl Eq for LangParam {}

impl Hash for LangParam {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dfa.hash(state)
    }
}

/// Formulas of unary temporal logic with language-parameterized modalities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TlFormula {
    True,
    False,
    Min,
    Max,
    Letter(Letter),
    Not(Box<TlFormula>),
    And(Box<TlFormula>, Box<TlFormula>),
    Or(Box<TlFormula>, Box<TlFormula>),
    Finally(LangParam, Box<TlFormula>),
    Previously(LangParam, Box<TlFormula>),
}

impl TlFormula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: TlFormula) -> Self {
        TlFormula::Not(Box::new(f))
    }

    pub fn and(f: TlFormula, g: TlFormula) -> Self {
        TlFormula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: TlFormula, g: TlFormula) -> Self {
        TlFormula::Or(Box::new(f), Box::new(g))
    }

    pub fn finally(l: LangParam, f: TlFormula) -> Self {
        TlFormula::Finally(l, Box::new(f))
    }

    pub fn previously(l: LangParam, f: TlFormula) -> Self {
        TlFormula::Previously(l, Box::new(f))
    }

    pub fn depth(&self) -> usize {
        match self {
            TlFormula::True | TlFormula::False | TlFormula::Min | TlFormula::Max => 0,
            TlFormula::Letter(_) => 0,
            TlFormula::Not(f) => f.depth(),
            TlFormula::And(f, g) | TlFormula::Or(f, g) => f.depth().max(g.depth()),
            TlFormula::Finally(_, f) | TlFormula::Previously(_, f) => 1 + f.depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            TlFormula::Not(f) | TlFormula::Finally(_, f) | TlFormula::Previously(_, f) => {
                1 + f.size()
            }
            TlFormula::And(f, g) | TlFormula::Or(f, g) => 1 + f.size() + g.size(),
            _ => 1,
        }
    }

    /// Every language parameter, in pre-order.
    pub fn params(&self) -> Vec<&LangParam> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params<'a>(&'a self, out: &mut Vec<&'a LangParam>) {
        match self {
            TlFormula::Not(f) => f.collect_params(out),
            TlFormula::And(f, g) | TlFormula::Or(f, g) => {
                f.collect_params(out);
                g.collect_params(out);
            }
            TlFormula::Finally(l, f) | TlFormula::Previously(l, f) => {
                out.push(l);
                f.collect_params(out);
            }
            _ => {}
        }
    }

    /// Checks that every letter and parameter fits `alphabet`.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self {
            TlFormula::Letter(a) if *a >= alphabet.len() => {
                Err(Error::invalid(format!("letter index {a} outside the alphabet")))
            }
            TlFormula::Not(f) => f.check_alphabet(alphabet),
            TlFormula::And(f, g) | TlFormula::Or(f, g) => {
                f.check_alphabet(alphabet)?;
                g.check_alphabet(alphabet)
            }
            TlFormula::Finally(l, f) | TlFormula::Previously(l, f) => {
                if l.dfa().alphabet() != alphabet {
                    return Err(Error::AlphabetMismatch);
                }
                f.check_alphabet(alphabet)
            }
            _ => Ok(()),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> FormulaDisplay<'a> {
        FormulaDisplay { f: self, alphabet }
    }

    pub fn to_ast(&self, alphabet: &Alphabet) -> FormulaAst {
        match self {
            TlFormula::True => FormulaAst::True,
            TlFormula::False => FormulaAst::False,
            TlFormula::Min => FormulaAst::Min,
            TlFormula::Max => FormulaAst::Max,
            TlFormula::Letter(a) => FormulaAst::Letter(alphabet.name(*a).to_string()),
            TlFormula::Not(f) => FormulaAst::Not(Box::new(f.to_ast(alphabet))),
            TlFormula::And(f, g) => FormulaAst::And(vec![f.to_ast(alphabet), g.to_ast(alphabet)]),
            TlFormula::Or(f, g) => FormulaAst::Or(vec![f.to_ast(alphabet), g.to_ast(alphabet)]),
            TlFormula::Finally(l, f) => FormulaAst::Finally {
                lang: param_text(l),
                sub: Box::new(f.to_ast(alphabet)),
            },
            TlFormula::Previously(l, f) => FormulaAst::Previously {
                lang: param_text(l),
                sub: Box::new(f.to_ast(alphabet)),
            },
        }
    }
}

fn param_text(l: &LangParam) -> String {
    if l.source().is_empty() {
        let al = l.dfa().alphabet();
        if l.dfa() == &Dfa::universal(al).minimize() {
            return all_letters_star(al);
        }
    }
    l.source().to_string()
}

fn all_letters_star(al: &Alphabet) -> String {
    let parts: Vec<String> = al
        .letters()
        .iter()
        .map(|l| if l.chars().count() == 1 { l.clone() } else { format!("<{l}>") })
        .collect();
    format!("({})*", parts.join("|"))
}

pub struct FormulaDisplay<'a> {
    f: &'a TlFormula,
    alphabet: &'a Alphabet,
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let al = self.alphabet;
        let sub = |g: &'_ TlFormula| g.display(al).to_string();
        match self.f {
            TlFormula::True => write!(out, "T"),
            TlFormula::False => write!(out, "F"),
            TlFormula::Min => write!(out, "min"),
            TlFormula::Max => write!(out, "max"),
            TlFormula::Letter(a) => write!(out, "'{}'", al.name(*a)),
            TlFormula::Not(g) => write!(out, "!{}", sub(g)),
            TlFormula::And(g, h) => write!(out, "({} & {})", sub(g), sub(h)),
            TlFormula::Or(g, h) => write!(out, "({} | {})", sub(g), sub(h)),
            TlFormula::Finally(l, g) => write!(out, "F[{}]{{{}}}", param_text(l), sub(g)),
            TlFormula::Previously(l, g) => write!(out, "P[{}]{{{}}}", param_text(l), sub(g)),
        }
    }
}

/// JSON form of a formula; language parameters are regex text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaAst {
    True,
    False,
    Min,
    Max,
    Letter(String),
    Not(Box<FormulaAst>),
    And(Vec<FormulaAst>),
    Or(Vec<FormulaAst>),
    Finally { lang: String, sub: Box<FormulaAst> },
    Previously { lang: String, sub: Box<FormulaAst> },
}

impl FormulaAst {
    pub fn to_formula(&self, alphabet: &Alphabet) -> Result<TlFormula> {
        Ok(match self {
            FormulaAst::True => TlFormula::True,
            FormulaAst::False => TlFormula::False,
            FormulaAst::Min => TlFormula::Min,
            FormulaAst::Max => TlFormula::Max,
            FormulaAst::Letter(l) => TlFormula::Letter(alphabet.lookup(l)?),
            FormulaAst::Not(f) => TlFormula::not(f.to_formula(alphabet)?),
            FormulaAst::And(fs) => fold(fs, alphabet, TlFormula::True, TlFormula::and)?,
            FormulaAst::Or(fs) => fold(fs, alphabet, TlFormula::False, TlFormula::or)?,
            FormulaAst::Finally { lang, sub } => TlFormula::finally(
                LangParam::from_regex(lang, alphabet)?,
                sub.to_formula(alphabet)?,
            ),
            FormulaAst::Previously { lang, sub } => TlFormula::previously(
                LangParam::from_regex(lang, alphabet)?,
                sub.to_formula(alphabet)?,
            ),
        })
    }
}

fn fold(
    fs: &[FormulaAst],
    alphabet: &Alphabet,
    unit: TlFormula,
    op: fn(TlFormula, TlFormula) -> TlFormula,
) -> Result<TlFormula> {
    let mut it = fs.iter();
    let Some(first) = it.next() else { return Ok(unit) };
    let mut acc = first.to_formula(alphabet)?;
    for f in it {
        acc = op(acc, f.to_formula(alphabet)?);
    }
    Ok(acc)
}
