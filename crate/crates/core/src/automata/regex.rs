//! Regular expressions over an explicit alphabet.
//!
//! Grammar, loosest binding first: `e | e`, `e & e`, concatenation, prefix `!`,
//! postfix `*`, `+`, `?`. Atoms are letters, `<name>` for multi-character
//! letters, `~` (the empty word), `@` (the empty language) and parentheses.

use super::alphabet::{Alphabet, Letter};
use super::dfa::Dfa;
use super::nfa::Nfa;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Empty,
    Epsilon,
    Letter(Letter),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Inter(Box<Regex>, Box<Regex>),
    Complement(Box<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
    Optional(Box<Regex>),
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { position: self.pos, message: msg.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> char {
        let c = self.text[self.pos..].chars().next().unwrap();
        self.pos += c.len_utf8();
        c
    }

    fn alt(&mut self) -> Result<Regex> {
        let mut e = self.inter()?;
        while self.peek() == Some('|') {
            self.bump();
            e = Regex::Union(Box::new(e), Box::new(self.inter()?));
        }
        Ok(e)
    }

    fn inter(&mut self) -> Result<Regex> {
        let mut e = self.concat()?;
        while self.peek() == Some('&') {
            self.bump();
            e = Regex::Inter(Box::new(e), Box::new(self.concat()?));
        }
        Ok(e)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, '|' | '&' | ')') {
                break;
            }
            parts.push(self.unary()?);
        }
        let mut it = parts.into_iter();
        let first = it.next().ok_or_else(|| self.err("expected an expression"))?;
        Ok(it.fold(first, |acc, e| Regex::Concat(Box::new(acc), Box::new(e))))
    }

    fn unary(&mut self) -> Result<Regex> {
        if self.peek() == Some('!') {
            self.bump();
            return Ok(Regex::Complement(Box::new(self.unary()?)));
        }
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    e = Regex::Star(Box::new(e));
                }
                Some('+') => {
                    self.bump();
                    e = Regex::Plus(Box::new(e));
                }
                Some('?') => {
                    self.bump();
                    e = Regex::Optional(Box::new(e));
                }
                _ => return Ok(e),
            }
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        match c {
            '(' => {
                self.bump();
                let e = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            '~' => {
                self.bump();
                Ok(Regex::Epsilon)
            }
            '@' => {
                self.bump();
                Ok(Regex::Empty)
            }
            '<' => {
                self.bump();
                let start = self.pos;
                let Some(len) = self.text[start..].find('>') else {
                    return Err(self.err("unterminated `<`"));
                };
                let name = &self.text[start..start + len];
                let a = self.alphabet.lookup(name)?;
                self.pos = start + len + 1;
                Ok(Regex::Letter(a))
            }
            '*' | '+' | '?' => Err(self.err(format!("dangling `{c}`"))),
            _ => match self.alphabet.longest_prefix(&self.text[self.pos..]) {
                Some((a, n)) => {
                    self.pos += n;
                    Ok(Regex::Letter(a))
                }
                None => Err(Error::UnknownLetter(c.to_string())),
            },
        }
    }
}

impl Regex {
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex> {
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut p = Parser { text, pos: 0, alphabet };
        let e = p.alt()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    pub fn to_nfa(&self, alphabet: &Alphabet) -> Result<Nfa> {
        Ok(match self {
            Regex::Empty => Nfa::empty(alphabet),
            Regex::Epsilon => Nfa::epsilon(alphabet),
            Regex::Letter(a) => Nfa::letter(alphabet, *a),
            Regex::Concat(x, y) => x.to_nfa(alphabet)?.concat(&y.to_nfa(alphabet)?)?,
            Regex::Union(x, y) => x.to_nfa(alphabet)?.union(&y.to_nfa(alphabet)?)?,
            Regex::Star(x) => x.to_nfa(alphabet)?.star(),
            Regex::Plus(x) => x.to_nfa(alphabet)?.plus(),
            Regex::Optional(x) => x.to_nfa(alphabet)?.union(&Nfa::epsilon(alphabet))?,
            Regex::Inter(x, y) => {
                let dx = x.to_nfa(alphabet)?.determinize()?.minimize();
                let dy = y.to_nfa(alphabet)?.determinize()?.minimize();
                dx.intersect(&dy)?.minimize().to_nfa()
            }
            Regex::Complement(x) => {
                x.to_nfa(alphabet)?.determinize()?.minimize().complement().to_nfa()
            }
        })
    }
}

/// Parses `text` over `alphabet` into an NFA.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Nfa> {
    Regex::parse(text, alphabet)?.to_nfa(alphabet)
}

/// Parses, determinizes and minimizes.
pub fn regex_dfa(text: &str, alphabet: &Alphabet) -> Result<Dfa> {
    Ok(parse_regex(text, alphabet)?.determinize()?.minimize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn complement_of_contains_a_is_b_star() {
        let al = ab();
        let d = regex_dfa("!( (a|b)*a(a|b)* )", &al).unwrap();
        for w in al.words_up_to(6) {
            assert_eq!(d.accepts(&w), w.iter().all(|&x| x == 1));
        }
    }

    #[test]
    fn empty_set_and_epsilon() {
        let al = ab();
        assert!(regex_dfa("@", &al).unwrap().is_empty());
        let e = regex_dfa("~", &al).unwrap();
        assert_eq!(e.enumerate_words(3), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn errors_carry_positions() {
        let al = ab();
        assert!(matches!(Regex::parse("(ab", &al), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(Regex::parse("ac", &al), Err(Error::UnknownLetter(_))));
        assert!(matches!(Regex::parse("a|", &al), Err(Error::Syntax { .. })));
        assert!(matches!(Regex::parse("*a", &al), Err(Error::Syntax { position: 0, .. })));
    }

    #[test]
    fn intersection_and_multichar_letters() {
        let al = Alphabet::new(["l0", "l1"]).unwrap();
        let d = regex_dfa("(l0|l1)*l1 & <l0>(l0|l1)*", &al).unwrap();
        assert!(d.accepts(&[0, 1]));
        assert!(!d.accepts(&[1, 1]));
        assert!(!d.accepts(&[0, 0]));
    }
}
