use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A letter is an index into its alphabet.
pub type Letter = usize;
/// Words are sequences of letter indices.
pub type Word = Vec<Letter>;

const RESERVED: &str = "()|&!*+?~@<>[]{}'\",";

/// Ordered finite set of letter names. Order fixes every canonical enumeration.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.chars().any(|c| c.is_whitespace() || RESERVED.contains(c)) {
                return Err(Error::invalid(format!("bad letter name `{l}`")));
            }
            if letters[..i].contains(l) {
                return Err(Error::invalid(format!("duplicate letter `{l}`")));
            }
        }
        Ok(Alphabet { letters: letters.into() })
    }

    /// One letter per character, e.g. `"ab"`.
    pub fn from_chars(s: &str) -> Result<Self> {
        Self::new(s.chars().map(|c| c.to_string()))
    }

    /// Parses a comma or whitespace separated list, or a bare run of characters.
    pub fn parse_list(s: &str) -> Result<Self> {
        if s.contains(',') || s.trim().contains(char::is_whitespace) {
            Self::new(
                s.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(str::to_string),
            )
        } else {
            Self::from_chars(s.trim())
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.letters[a]
    }

    pub fn index(&self, name: &str) -> Option<Letter> {
        self.letters.iter().position(|l| l == name)
    }

    pub fn lookup(&self, name: &str) -> Result<Letter> {
        self.index(name).ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// Longest letter name that is a prefix of `s`.
    pub(crate) fn longest_prefix(&self, s: &str) -> Option<(Letter, usize)> {
        let mut best: Option<(Letter, usize)> = None;
        for (i, l) in self.letters.iter().enumerate() {
            if s.starts_with(l.as_str()) && best.is_none_or(|(_, n)| l.len() > n) {
                best = Some((i, l.len()));
            }
        }
        best
    }

    /// Reads a word written as concatenated letter names. `""` and `"~"` denote ε.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let t = text.trim();
        if t == "~" {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut pos = 0;
        while pos < t.len() {
            let rest = &t[pos..];
            let c = rest.chars().next().unwrap();
            if c.is_whitespace() || c == '.' {
                pos += c.len_utf8();
                continue;
            }
            match self.longest_prefix(rest) {
                Some((a, n)) => {
                    out.push(a);
                    pos += n;
                }
                None => {
                    let bad: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
                    return Err(Error::UnknownLetter(bad));
                }
            }
        }
        Ok(out)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        w.iter().map(|&a| self.name(a)).collect()
    }

    /// Iterates all words of length exactly `n` in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> impl Iterator<Item = Word> {
        let k = self.len();
        let total = k.checked_pow(n as u32).expect("word count overflow");
        (0..total).map(move |mut idx| {
            let mut w = vec![0; n];
            for slot in w.iter_mut().rev() {
                *slot = idx % k;
                idx /= k;
            }
            w
        })
    }

    /// All words of length at most `n`, shortlex order.
    pub fn words_up_to(&self, n: usize) -> impl Iterator<Item = Word> + '_ {
        (0..=n).flat_map(move |len| self.words_of_length(len))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.letters.join(","))
    }
}
