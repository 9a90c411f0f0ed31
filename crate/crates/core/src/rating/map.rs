use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::imprint::Imprint;
use super::semiring::{IdemSemiring, PowersetSemiring, Rating, TableSemiring};
use crate::algebra::Morphism;
use crate::automata::{Alphabet, Dfa, Letter};
use crate::error::{Error, Result};

/// Cap on the number of distinct word ratings explored by [`RatingMap::word_values`].
pub const WORD_VALUE_LIMIT: usize = 100_000;

/// A full multiplicative rating map, determined by its letter ratings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatingMap<S> {
    semiring: S,
    alphabet: Alphabet,
    letter_rating: Vec<Rating>,
}

impl<S: IdemSemiring> RatingMap<S> {
    pub fn new(semiring: S, alphabet: Alphabet, letter_rating: Vec<Rating>) -> Result<Self> {
        if letter_rating.len() != alphabet.len() {
            return Err(Error::AlphabetMismatch);
        }
        Ok(RatingMap { semiring, alphabet, letter_rating })
    }

    pub fn semiring(&self) -> &S {
        &self.semiring
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letter_rating(&self, a: Letter) -> Rating {
        self.letter_rating[a]
    }

    pub fn letter_ratings(&self) -> &[Rating] {
        &self.letter_rating
    }

    /// ρ*(w).
    pub fn rate_word(&self, w: &[Letter]) -> Rating {
        let s = &self.semiring;
        w.iter().fold(s.one(), |acc, &a| s.mul(acc, self.letter_rating[a]))
    }

    /// ρ(L(k)) = Σ {ρ*(w) | w ∈ L(k)}.
    pub fn rate(&self, k: &Dfa) -> Result<Rating> {
        if k.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let s = &self.semiring;
        let live = k.coreachable();
        let mut seen: HashSet<(usize, Rating)> = HashSet::new();
        let mut stack = Vec::new();
        let mut total = s.zero();
        if live[k.initial()] {
            seen.insert((k.initial(), s.one()));
            stack.push((k.initial(), s.one()));
        }
        while let Some((q, r)) = stack.pop() {
            if k.is_accepting(q) {
                total = s.add(total, r);
            }
            for (a, &x) in self.letter_rating.iter().enumerate() {
                let q2 = k.step(q, a);
                if !live[q2] {
                    continue;
                }
                let r2 = s.mul(r, x);
                if seen.insert((q2, r2)) {
                    if seen.len() > WORD_VALUE_LIMIT {
                        return Err(Error::resource("rating exploration exceeded its limit"));
                    }
                    stack.push((q2, r2));
                }
            }
        }
        Ok(total)
    }

    /// The distinct values ρ*(w), discovery order from ρ*(ε) = 1, with the
    /// successor table `next[i][a]` (indices into the value list).
    pub fn word_values(&self) -> Result<(Vec<Rating>, Vec<Vec<usize>>)> {
        let s = &self.semiring;
        let mut values = vec![s.one()];
        let mut index: HashMap<Rating, usize> = HashMap::from([(s.one(), 0)]);
        let mut next = Vec::new();
        let mut i = 0;
        while i < values.len() {
            let mut row = Vec::with_capacity(self.letter_rating.len());
            for &x in &self.letter_rating {
                let r = s.mul(values[i], x);
                let id = *index.entry(r).or_insert_with(|| {
                    values.push(r);
                    values.len() - 1
                });
                row.push(id);
            }
            if values.len() > WORD_VALUE_LIMIT {
                return Err(Error::resource("too many word ratings"));
            }
            next.push(row);
            i += 1;
        }
        Ok((values, next))
    }

    /// DFA of ρ*⁻¹(q).
    pub fn preimage_dfa(&self, q: Rating) -> Result<Dfa> {
        let (values, next) = self.word_values()?;
        Dfa::from_fn(&self.alphabet, values.len(), 0, |i, a| next[i][a], |i| values[i] == q)
    }

    pub fn imprint_of_cover(&self, cover: &[Dfa]) -> Result<Imprint> {
        let mut out = Imprint::empty();
        for k in cover {
            out.insert(&self.semiring, self.rate(k)?);
        }
        Ok(out)
    }
}

/// The canonical map for α: R = (2^M, ∪, ·), a ↦ {α(a)}.
pub fn canonical_rating_map(alpha: &Morphism) -> Result<RatingMap<PowersetSemiring>> {
    let semiring = PowersetSemiring::new(Arc::clone(alpha.monoid_arc()))?;
    let letters = alpha.letter_images().iter().map(|&x| PowersetSemiring::singleton(x)).collect();
    RatingMap::new(semiring, alpha.alphabet().clone(), letters)
}

pub fn imprint_of_cover<S: IdemSemiring>(rho: &RatingMap<S>, cover: &[Dfa]) -> Result<Imprint> {
    rho.imprint_of_cover(cover)
}

/// Wire format for a table semiring with letter ratings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatingMapJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    pub size: usize,
    pub add: Vec<Vec<usize>>,
    pub mult: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
    #[serde(default)]
    pub letter_rating: BTreeMap<String, usize>,
}

impl RatingMapJson {
    pub fn semiring(&self) -> Result<TableSemiring> {
        let s = TableSemiring::new(self.add.clone(), self.mult.clone(), self.zero, self.one)?;
        if s.size() != self.size {
            return Err(Error::invalid("size does not match the tables"));
        }
        Ok(s)
    }

    pub fn to_rating_map(&self) -> Result<RatingMap<TableSemiring>> {
        let semiring = self.semiring()?;
        let alphabet = match &self.alphabet {
            Some(v) => Alphabet::new(v.iter().cloned())?,
            None => Alphabet::new(self.letter_rating.keys().cloned())?,
        };
        let mut letters = Vec::new();
        for l in alphabet.letters() {
            let r = *self.letter_rating.get(l).ok_or_else(|| Error::UnknownLetter(l.clone()))?;
            if r >= self.size {
                return Err(Error::invalid("letter rating out of range"));
            }
            letters.push(r as Rating);
        }
        RatingMap::new(semiring, alphabet, letters)
    }

    pub fn from_rating_map(rho: &RatingMap<TableSemiring>) -> Self {
        let s = rho.semiring();
        let al = rho.alphabet();
        RatingMapJson {
            format: None,
            alphabet: Some(al.letters().to_vec()),
            size: s.size(),
            add: s.add_table(),
            mult: s.mul_table(),
            zero: s.zero() as usize,
            one: s.one() as usize,
            letter_rating: (0..al.len())
                .map(|a| (al.name(a).to_string(), rho.letter_rating(a) as usize))
                .collect(),
        }
    }
}
