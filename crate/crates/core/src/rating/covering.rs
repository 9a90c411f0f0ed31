use serde::Serialize;

use super::imprint::Imprint;
use super::map::{canonical_rating_map, RatingMap};
use super::semiring::{IdemSemiring, PowersetSemiring, Rating};
use crate::algebra::{transition_monoid, Morphism};
use crate::automata::Dfa;
use crate::error::{Error, Result};

/// Outcome of a covering question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverDecision {
    Coverable,
    NotCoverable,
    Unknown,
}

/// A covering instance (L0, {L1..Ln}) turned into an imprint question:
/// coverable iff Opt(A*, ρ) ∩ F = ∅, where F = {X ⊆ M | X ∩ F_i ≠ ∅ for all i ≤ n}.
#[derive(Clone, Debug)]
pub struct CoveringReduction {
    pub morphism: Morphism,
    pub rho: RatingMap<PowersetSemiring>,
    /// F_0 (for L0) followed by F_1..F_n, as element masks.
    pub constraints: Vec<Rating>,
}

impl CoveringReduction {
    pub fn in_target(&self, x: Rating) -> bool {
        self.constraints.iter().all(|&f| x & f != 0)
    }

    /// Does the downset meet F? F is upward closed, so generators suffice.
    pub fn meets_target(&self, imprint: &Imprint) -> bool {
        imprint.generators().iter().any(|&x| self.in_target(x))
    }

    /// F listed explicitly (small monoids only).
    pub fn target_elements(&self) -> Option<Vec<Rating>> {
        let all = self.rho.semiring().elements()?;
        Some(all.into_iter().filter(|&x| self.in_target(x)).collect())
    }
}

/// One morphism recognizing L0 and every Li: the transition monoid of the product
/// of their minimal DFAs.
pub fn covering_to_imprint(l0: &Dfa, ls: &[Dfa]) -> Result<CoveringReduction> {
    if ls.is_empty() {
        return Err(Error::invalid("the covering target list must be non-empty"));
    }
    let langs: Vec<Dfa> = std::iter::once(l0).chain(ls).map(Dfa::minimize).collect();
    let al = l0.alphabet().clone();
    if langs.iter().any(|d| d.alphabet() != &al) {
        return Err(Error::AlphabetMismatch);
    }
    // reachable product of the component automata
    let k = al.len();
    let mut tuples: Vec<Vec<usize>> = vec![langs.iter().map(Dfa::initial).collect()];
    let mut index = std::collections::HashMap::from([(tuples[0].clone(), 0usize)]);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        for a in 0..k {
            let t: Vec<usize> = tuples[i].iter().zip(&langs).map(|(&q, d)| d.step(q, a)).collect();
            let id = *index.entry(t.clone()).or_insert_with(|| {
                tuples.push(t);
                tuples.len() - 1
            });
            delta.push(id);
        }
        i += 1;
    }
    let n = tuples.len();
    let product = Dfa::from_parts(al.clone(), 0, delta, vec![false; n])?;
    let morphism = transition_monoid(&product)?;
    let rho = canonical_rating_map(&morphism)?;
    let reps = morphism.representatives();
    let constraints = (0..langs.len())
        .map(|j| {
            let mut mask: Rating = 0;
            for (x, w) in reps.iter().enumerate() {
                let state = product.run(0, w.as_ref().expect("surjective"));
                if langs[j].is_accepting(tuples[state][j]) {
                    mask |= 1 << x;
                }
            }
            mask
        })
        .collect();
    Ok(CoveringReduction { morphism, rho, constraints })
}

/// Opt(L, ρ) = ↓{Σ Q | (L, {ρ*⁻¹(q) | q ∈ Q}) is not coverable}, with Q ranging over
/// sets of word ratings. Returns `None` when the oracle answered unknown.
pub fn imprint_via_covering_decisions<S, F>(
    l: &Dfa,
    rho: &RatingMap<S>,
    mut decide: F,
) -> Result<Option<Imprint>>
where
    S: IdemSemiring,
    F: FnMut(&Dfa, &[Dfa]) -> Result<CoverDecision>,
{
    let s = rho.semiring();
    let (values, _) = rho.word_values()?;
    if values.len() > 16 {
        return Err(Error::resource("more than 16 word ratings"));
    }
    let pre: Vec<Dfa> = values.iter().map(|&q| rho.preimage_dfa(q)).collect::<Result<_>>()?;
    let mut out = Imprint::empty();
    if !l.is_empty() {
        out.insert(s, s.zero());
    }
    for mask in 1u32..(1 << values.len()) {
        let chosen: Vec<usize> = (0..values.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let sum = s.sum(chosen.iter().map(|&i| values[i]));
        if out.contains(s, sum) {
            continue;
        }
        let targets: Vec<Dfa> = chosen.iter().map(|&i| pre[i].clone()).collect();
        match decide(l, &targets)? {
            CoverDecision::NotCoverable => {
                out.insert(s, sum);
            }
            CoverDecision::Coverable => {}
            CoverDecision::Unknown => return Ok(None),
        }
    }
    Ok(Some(out))
}
