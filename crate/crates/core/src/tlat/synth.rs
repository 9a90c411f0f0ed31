//! Cover synthesis by bounded search over TL(AT) formulas.
//!
//! Formulas are enumerated by size with modality parameters B* (B ⊆ A), which
//! generate AT under union. Candidates are deduplicated by their truth values at
//! every position of the short words, since subformulas matter at inner positions.
//! A formula is useful for target Li when its language misses Li; the output
//! has one disjunction per target, and together they cover L0.

use std::collections::HashSet;

use super::decide::decide_covering;
use super::saturation::{saturate, Mode, SaturationState};
use crate::automata::{Alphabet, Dfa, Word};
use crate::error::{Error, Result};
use crate::rating::{CoverDecision, IdemSemiring, Rating, RatingMap};
use crate::tl::{compile, satisfaction, LangParam, TlFormula};

/// An alphabet with a content morphism β (as letter bitmasks over A, never
/// empty) and letter ratings τ, such that every (β(ℓ), τ(ℓ)) lies in S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodTriple {
    pub alphabet: Alphabet,
    pub beta: Vec<usize>,
    pub tau: Vec<Rating>,
}

impl GoodTriple {
    /// (A, η_AT, ρ) itself.
    pub fn initial<S: IdemSemiring>(rho: &RatingMap<S>) -> Self {
        GoodTriple {
            alphabet: rho.alphabet().clone(),
            beta: (0..rho.alphabet().len()).map(|a| 1 << a).collect(),
            tau: rho.letter_ratings().to_vec(),
        }
    }

    pub fn is_good<S: IdemSemiring>(&self, s: &S, state: &SaturationState) -> bool {
        self.beta.len() == self.alphabet.len()
            && self.tau.len() == self.alphabet.len()
            && self
                .beta
                .iter()
                .zip(&self.tau)
                .all(|(&b, &r)| b != 0 && b < state.rows.len() && state.contains(s, b, r))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthesisBudget {
    pub max_size: usize,
    /// Distinct languages kept per run.
    pub max_languages: usize,
}

impl Default for SynthesisBudget {
    fn default() -> Self {
        SynthesisBudget { max_size: 7, max_languages: 4000 }
    }
}

/// Formulas whose languages cover L0, each disjoint from some Li. Requires the
/// covering question to be decided coverable with both saturation modes agreeing.
pub fn synthesize_cover(l0: &Dfa, ls: &[Dfa], budget: &SynthesisBudget) -> Result<Vec<TlFormula>> {
    let outcome = decide_covering(l0, ls)?;
    if outcome.result != CoverDecision::Coverable {
        return Err(Error::ExactnessRequired(format!(
            "covering decided {:?}, synthesis needs coverable",
            outcome.result
        )));
    }
    let red = crate::rating::covering_to_imprint(l0, ls)?;
    let s = red.rho.semiring();
    let lower = saturate(&red.rho, Mode::Lower)?;
    if !GoodTriple::initial(&red.rho).is_good(s, &lower) {
        return Err(Error::invalid("initial triple is not good"));
    }
    let al = l0.alphabet().clone();
    let l0 = l0.minimize();
    let ls: Vec<Dfa> = ls.iter().map(Dfa::minimize).collect();
    if l0.is_empty() {
        return Ok(Vec::new());
    }

    let params = content_params(&al)?;
    let sample = sample_words(&al);
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut by_size: Vec<Vec<(TlFormula, Dfa)>> = vec![Vec::new()];
    let mut picks: Vec<Option<(TlFormula, Dfa)>> = vec![None; ls.len()];

    for size in 1..=budget.max_size {
        let mut level = Vec::new();
        for f in candidates(size, &by_size, &params, al.len()) {
            let sig: Vec<bool> = sample.iter().flat_map(|w| satisfaction(&f, w)).collect();
            if !seen.insert(sig) {
                continue;
            }
            let d = compile(&f, &al)?;
            if seen.len() > budget.max_languages {
                return Err(Error::resource("synthesis search exceeded its language budget"));
            }
            for (j, lj) in ls.iter().enumerate() {
                if d.intersect(lj)?.is_empty() {
                    absorb(&mut picks[j], &f, &d)?;
                }
            }
            level.push((f, d));
        }
        by_size.push(level);
        if covers(&l0, &picks)? {
            let mut out = Vec::new();
            for (f, d) in picks.into_iter().flatten() {
                if !d.intersect(&l0)?.is_empty() {
                    out.push(f);
                }
            }
            return Ok(out);
        }
    }
    Err(Error::resource(format!("no cover found with formulas of size ≤ {}", budget.max_size)))
}

/// Every word up to the longest length keeping the sample near 1000 words.
fn sample_words(al: &Alphabet) -> Vec<Word> {
    let k = al.len().max(1);
    let mut out: Vec<Word> = vec![Vec::new()];
    let mut layer = out.clone();
    while out.len() * k <= 1000 {
        layer = layer
            .iter()
            .flat_map(|w| (0..k).map(move |a| {
                let mut v = w.clone();
                v.push(a);
                v
            }))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn content_params(al: &Alphabet) -> Result<Vec<LangParam>> {
    let k = al.len();
    let mut out = Vec::new();
    for b in 0..1usize << k {
        let letters: Vec<usize> = (0..k).filter(|a| b >> a & 1 == 1).collect();
        let text = if letters.is_empty() {
            "~".to_string()
        } else {
            let names: Vec<String> = letters
                .iter()
                .map(|&a| {
                    let n = al.name(a);
                    if n.chars().count() == 1 { n.to_string() } else { format!("<{n}>") }
                })
                .collect();
            format!("({})*", names.join("|"))
        };
        out.push(LangParam::from_regex(&text, al)?);
    }
    Ok(out)
}

fn candidates(
    size: usize,
    by_size: &[Vec<(TlFormula, Dfa)>],
    params: &[LangParam],
    letters: usize,
) -> Vec<TlFormula> {
    let mut out = Vec::new();
    if size == 1 {
        out.extend([TlFormula::True, TlFormula::False, TlFormula::Min, TlFormula::Max]);
        out.extend((0..letters).map(TlFormula::Letter));
        return out;
    }
    for (g, _) in &by_size[size - 1] {
        out.push(TlFormula::not(g.clone()));
        for l in params {
            out.push(TlFormula::finally(l.clone(), g.clone()));
            out.push(TlFormula::previously(l.clone(), g.clone()));
        }
    }
    for i in 1..size - 1 {
        let j = size - 1 - i;
        if i > j {
            break;
        }
        for (x, (g, _)) in by_size[i].iter().enumerate() {
            let start = if i == j { x + 1 } else { 0 };
            for (h, _) in &by_size[j][start..] {
                out.push(TlFormula::and(g.clone(), h.clone()));
                out.push(TlFormula::or(g.clone(), h.clone()));
            }
        }
    }
    out
}

fn absorb(pick: &mut Option<(TlFormula, Dfa)>, f: &TlFormula, d: &Dfa) -> Result<()> {
    *pick = match pick.take() {
        None => Some((f.clone(), d.clone())),
        Some((g, e)) => {
            if d.is_subset_of(&e)? {
                Some((g, e))
            } else if e.is_subset_of(d)? {
                Some((f.clone(), d.clone()))
            } else {
                Some((TlFormula::or(g, f.clone()), e.union(d)?.minimize()))
            }
        }
    };
    Ok(())
}

fn covers(l0: &Dfa, picks: &[Option<(TlFormula, Dfa)>]) -> Result<bool> {
    let mut rest = l0.clone();
    for (_, d) in picks.iter().flatten() {
        rest = rest.difference(d)?.minimize();
    }
    Ok(rest.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::regex_dfa;

    fn check_cover(l0: &Dfa, ls: &[Dfa], out: &[TlFormula]) {
        let al = l0.alphabet();
        let mut union = Dfa::empty(al);
        for f in out {
            let d = compile(f, al).unwrap();
            assert!(ls.iter().any(|lj| d.intersect(lj).unwrap().is_empty()));
            union = union.union(&d).unwrap();
        }
        assert!(l0.is_subset_of(&union).unwrap());
    }

    #[test]
    fn empty_word_against_nonempty() {
        let al = Alphabet::from_chars("ab").unwrap();
        let l0 = regex_dfa("~", &al).unwrap();
        let ls = [regex_dfa("(a|b)+", &al).unwrap()];
        let out = synthesize_cover(&l0, &ls, &SynthesisBudget::default()).unwrap();
        assert_eq!(out.len(), 1);
        assert!(compile(&out[0], &al).unwrap().equivalent(&l0).unwrap());
        check_cover(&l0, &ls, &out);
    }

    #[test]
    fn b_star_against_contains_a() {
        let al = Alphabet::from_chars("ab").unwrap();
        let l0 = regex_dfa("b*", &al).unwrap();
        let ls = [regex_dfa("(a|b)*a(a|b)*", &al).unwrap()];
        let out = synthesize_cover(&l0, &ls, &SynthesisBudget::default()).unwrap();
        assert_eq!(out.len(), 1);
        assert!(compile(&out[0], &al).unwrap().equivalent(&l0).unwrap());
    }

    #[test]
    fn two_targets() {
        let al = Alphabet::from_chars("ab").unwrap();
        let l0 = Dfa::universal(&al);
        let ls = [regex_dfa("(a|b)*a(a|b)*", &al).unwrap(), regex_dfa("(a|b)*b(a|b)*", &al).unwrap()];
        // ε, a⁺ and b⁺ are covered; words with both letters are not
        assert!(synthesize_cover(&l0, &ls, &SynthesisBudget::default()).is_err());
        let l0 = regex_dfa("a*|b*", &al).unwrap();
        let out = synthesize_cover(&l0, &ls, &SynthesisBudget::default()).unwrap();
        check_cover(&l0, &ls, &out);
    }

    #[test]
    fn parity_requires_coverable() {
        let al = Alphabet::from_chars("a").unwrap();
        let even = regex_dfa("(aa)*", &al).unwrap();
        let odd = regex_dfa("a(aa)*", &al).unwrap();
        let err = synthesize_cover(&even, &[odd], &SynthesisBudget::default()).unwrap_err();
        assert!(matches!(err, Error::ExactnessRequired(_)));
    }
}
