//! Text syntax: `T`, `F`, `min`, `max`, `'a'`, `!φ`, `φ & ψ`, `φ | ψ`,
//! `F[<regex>]{φ}`, `P[<regex>]{φ}`. `F{φ}` and `P{φ}` abbreviate the A* parameter;
//! `X{φ}` and `Y{φ}` abbreviate the {ε} parameter (next / yesterday).

use super::formula::{LangParam, TlFormula};
use crate::automata::Alphabet;
use crate::error::{Error, Result};

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { position: self.pos, message: msg.into() }
    }

    fn peek(&mut self) -> Option<char> {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                return Some(c);
            }
        }
        None
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn or(&mut self) -> Result<TlFormula> {
        let mut f = self.and()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            f = TlFormula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<TlFormula> {
        let mut f = self.unary()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            f = TlFormula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<TlFormula> {
        if self.peek() == Some('!') {
            self.pos += 1;
            return Ok(TlFormula::not(self.unary()?));
        }
        self.atom()
    }

    fn word(&mut self) -> &'a str {
        let rest = &self.text[self.pos..];
        let n = rest.find(|c: char| !c.is_ascii_alphanumeric()).unwrap_or(rest.len());
        self.pos += n;
        &rest[..n]
    }

    fn modality_body(&mut self, default: &str) -> Result<(LangParam, TlFormula)> {
        let param = if self.peek() == Some('[') {
            self.pos += 1;
            let start = self.pos;
            let Some(len) = self.text[start..].find(']') else {
                return Err(self.err("unterminated `[`"));
            };
            let src = &self.text[start..start + len];
            let p = LangParam::from_regex(src, self.alphabet).map_err(|e| match e {
                Error::Syntax { position, message } => {
                    Error::Syntax { position: start + position, message }
                }
                other => other,
            })?;
            self.pos = start + len + 1;
            p
        } else if default.is_empty() {
            LangParam::all(self.alphabet)
        } else {
            LangParam::from_regex(default, self.alphabet)?
        };
        self.expect('{')?;
        let f = self.or()?;
        self.expect('}')?;
        Ok((param, f))
    }

    fn atom(&mut self) -> Result<TlFormula> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of formula"));
        };
        match c {
            '(' => {
                self.pos += 1;
                let f = self.or()?;
                self.expect(')')?;
                Ok(f)
            }
            '\'' => {
                self.pos += 1;
                let start = self.pos;
                let Some(len) = self.text[start..].find('\'') else {
                    return Err(self.err("unterminated letter quote"));
                };
                let name = &self.text[start..start + len];
                let a = self.alphabet.lookup(name)?;
                self.pos = start + len + 1;
                Ok(TlFormula::Letter(a))
            }
            c if c.is_ascii_alphabetic() => {
                let at = self.pos;
                let w = self.word();
                let has_body = matches!(self.peek(), Some('[') | Some('{'));
                match (w, has_body) {
                    ("T" | "true", false) => Ok(TlFormula::True),
                    ("F" | "false", false) => Ok(TlFormula::False),
                    ("min", false) => Ok(TlFormula::Min),
                    ("max", false) => Ok(TlFormula::Max),
                    ("F", true) => {
                        let (l, f) = self.modality_body("")?;
                        Ok(TlFormula::finally(l, f))
                    }
                    ("P", true) => {
                        let (l, f) = self.modality_body("")?;
                        Ok(TlFormula::previously(l, f))
                    }
                    ("X", true) => {
                        let (l, f) = self.modality_body("~")?;
                        Ok(TlFormula::finally(l, f))
                    }
                    ("Y", true) => {
                        let (l, f) = self.modality_body("~")?;
                        Ok(TlFormula::previously(l, f))
                    }
                    _ => {
                        self.pos = at;
                        Err(self.err(format!("unexpected `{w}`")))
                    }
                }
            }
            _ => Err(self.err(format!("unexpected `{c}`"))),
        }
    }
}

/// Parses the text syntax over `alphabet`.
pub fn parse_formula(text: &str, alphabet: &Alphabet) -> Result<TlFormula> {
    let mut p = Parser { text, pos: 0, alphabet };
    let f = p.or()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}
