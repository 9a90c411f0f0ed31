use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monoid::{Elem, Monoid};
use crate::automata::{Alphabet, Dfa, Letter, Word};
use crate::error::{Error, Result};

/// Cap on transition monoid size (the full table is materialized).
pub const DEFAULT_MONOID_LIMIT: usize = 5000;

/// Morphism A* → M given by letter images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    alphabet: Alphabet,
    monoid: Arc<Monoid>,
    letter_image: Vec<Elem>,
}

impl Morphism {
    pub fn new(alphabet: Alphabet, monoid: Arc<Monoid>, letter_image: Vec<Elem>) -> Result<Self> {
        if letter_image.len() != alphabet.len() {
            return Err(Error::AlphabetMismatch);
        }
        if letter_image.iter().any(|&x| x >= monoid.size()) {
            return Err(Error::invalid("letter image outside the monoid"));
        }
        Ok(Morphism { alphabet, monoid, letter_image })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn monoid_arc(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    pub fn letter_image(&self, a: Letter) -> Elem {
        self.letter_image[a]
    }

    pub fn letter_images(&self) -> &[Elem] {
        &self.letter_image
    }

    pub fn eval(&self, w: &[Letter]) -> Elem {
        self.monoid.product(w.iter().map(|&a| self.letter_image[a]))
    }

    /// Shortest (shortlex-least) preimage of each element, `None` outside the image.
    pub fn representatives(&self) -> Vec<Option<Word>> {
        let m = &self.monoid;
        let mut rep: Vec<Option<Word>> = vec![None; m.size()];
        rep[m.identity()] = Some(Vec::new());
        let mut queue = VecDeque::from([m.identity()]);
        while let Some(x) = queue.pop_front() {
            for (a, &img) in self.letter_image.iter().enumerate() {
                let y = m.mul(x, img);
                if rep[y].is_none() {
                    let mut w = rep[x].clone().unwrap();
                    w.push(a);
                    rep[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        rep
    }

    /// Elements with a preimage.
    pub fn image(&self) -> Vec<bool> {
        self.representatives().iter().map(Option::is_some).collect()
    }

    /// Elements with a non-empty preimage, α(A⁺).
    pub fn plus_image(&self) -> Vec<bool> {
        let m = &self.monoid;
        let mut seen = vec![false; m.size()];
        let mut stack = Vec::new();
        for &x in &self.letter_image {
            if !seen[x] {
                seen[x] = true;
                stack.push(x);
            }
        }
        while let Some(x) = stack.pop() {
            for &img in &self.letter_image {
                let y = m.mul(x, img);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn is_surjective(&self) -> bool {
        self.image().iter().all(|&b| b)
    }

    /// Corestriction to the image, renumbered in shortlex discovery order.
    pub fn corestrict(&self) -> Morphism {
        let m = &self.monoid;
        let mut order: Vec<Elem> = vec![m.identity()];
        let mut index = vec![usize::MAX; m.size()];
        index[m.identity()] = 0;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for &img in &self.letter_image {
                let y = m.mul(x, img);
                if index[y] == usize::MAX {
                    index[y] = order.len();
                    order.push(y);
                }
            }
            i += 1;
        }
        let n = order.len();
        let mut mult = Vec::with_capacity(n * n);
        for &x in &order {
            for &y in &order {
                mult.push(index[m.mul(x, y)] as u32);
            }
        }
        Morphism {
            alphabet: self.alphabet.clone(),
            monoid: Arc::new(Monoid::from_trusted(n, 0, mult)),
            letter_image: self.letter_image.iter().map(|&x| index[x]).collect(),
        }
    }

    /// {α(w) | w ∈ L(k)} by reachability in the product of `k` with the Cayley graph.
    pub fn value_set(&self, k: &Dfa) -> Result<Vec<bool>> {
        if k.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let m = &self.monoid;
        let size = m.size();
        let mut seen = vec![false; k.num_states() * size];
        let mut out = vec![false; size];
        let start = k.initial() * size + m.identity();
        seen[start] = true;
        let mut stack = vec![(k.initial(), m.identity())];
        while let Some((q, x)) = stack.pop() {
            if k.is_accepting(q) {
                out[x] = true;
            }
            for (a, &img) in self.letter_image.iter().enumerate() {
                let (q2, y) = (k.step(q, a), m.mul(x, img));
                if !seen[q2 * size + y] {
                    seen[q2 * size + y] = true;
                    stack.push((q2, y));
                }
            }
        }
        Ok(out)
    }

    /// DFA over the monoid elements accepting α⁻¹(accept).
    pub fn preimage_dfa(&self, accept: &[bool]) -> Dfa {
        let m = &self.monoid;
        Dfa::from_fn(
            &self.alphabet,
            m.size(),
            m.identity(),
            |x, a| m.mul(x, self.letter_image[a]),
            |x| accept[x],
        )
        .expect("monoid automaton is well formed")
    }

    pub fn preimage_of(&self, x: Elem) -> Dfa {
        let mut acc = vec![false; self.monoid.size()];
        acc[x] = true;
        self.preimage_dfa(&acc)
    }
}

/// L = α⁻¹(F).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognizedLanguage {
    pub morphism: Morphism,
    pub accepting: Vec<bool>,
}

impl RecognizedLanguage {
    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.accepting[self.morphism.eval(w)]
    }

    pub fn to_dfa(&self) -> Dfa {
        self.morphism.preimage_dfa(&self.accepting)
    }

    pub fn accepting_elements(&self) -> Vec<Elem> {
        (0..self.accepting.len()).filter(|&x| self.accepting[x]).collect()
    }

    pub fn to_json(&self) -> MonoidJson {
        let m = self.morphism.monoid();
        let al = self.morphism.alphabet();
        MonoidJson {
            format: None,
            alphabet: Some(al.letters().to_vec()),
            size: m.size(),
            identity: m.identity(),
            mult: m.table(),
            letter_image: (0..al.len())
                .map(|a| (al.name(a).to_string(), self.morphism.letter_image(a)))
                .collect(),
            accepting: self.accepting_elements(),
        }
    }
}

/// Wire format for a recognizing monoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    pub size: usize,
    pub identity: Elem,
    pub mult: Vec<Vec<Elem>>,
    pub letter_image: BTreeMap<String, Elem>,
    #[serde(default)]
    pub accepting: Vec<Elem>,
}

impl MonoidJson {
    pub fn to_language(&self) -> Result<RecognizedLanguage> {
        let monoid = Monoid::new(self.mult.clone(), self.identity)?;
        if monoid.size() != self.size {
            return Err(Error::invalid("size does not match the table"));
        }
        let alphabet = match &self.alphabet {
            Some(v) => Alphabet::new(v.iter().cloned())?,
            None => Alphabet::new(self.letter_image.keys().cloned())?,
        };
        let mut images = Vec::with_capacity(alphabet.len());
        for l in alphabet.letters() {
            images.push(
                *self.letter_image.get(l).ok_or_else(|| Error::UnknownLetter(l.clone()))?,
            );
        }
        let morphism = Morphism::new(alphabet, Arc::new(monoid), images)?;
        let mut accepting = vec![false; self.size];
        for &x in &self.accepting {
            if x >= self.size {
                return Err(Error::invalid("accepting element out of range"));
            }
            accepting[x] = true;
        }
        Ok(RecognizedLanguage { morphism, accepting })
    }
}

/// Transition monoid of `d`: elements are the distinct state transformations,
/// numbered in breadth-first (shortlex) discovery order; 0 is the identity.
pub fn transition_monoid(d: &Dfa) -> Result<Morphism> {
    transition_monoid_with_limit(d, DEFAULT_MONOID_LIMIT)
}

pub fn transition_monoid_with_limit(d: &Dfa, limit: usize) -> Result<Morphism> {
    let n = d.num_states();
    let k = d.alphabet().len();
    let ident: Vec<u32> = (0..n as u32).collect();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut elems: Vec<Vec<u32>> = vec![ident.clone()];
    let mut parent: Vec<(usize, Letter)> = vec![(usize::MAX, 0)];
    let mut right: Vec<usize> = Vec::new();
    index.insert(ident, 0);
    let mut i = 0;
    while i < elems.len() {
        for a in 0..k {
            let t: Vec<u32> = elems[i].iter().map(|&q| d.step(q as usize, a) as u32).collect();
            let id = match index.get(&t) {
                Some(&id) => id,
                None => {
                    let id = elems.len();
                    if id >= limit {
                        return Err(Error::resource(format!(
                            "transition monoid exceeds {limit} elements"
                        )));
                    }
                    index.insert(t.clone(), id);
                    elems.push(t);
                    parent.push((i, a));
                    id
                }
            };
            right.push(id);
        }
        i += 1;
    }
    let size = elems.len();
    // x·y = (x·parent(y))·a, filled column by column in discovery order
    let mut mult = vec![0u32; size * size];
    for x in 0..size {
        mult[x * size] = x as u32;
    }
    for y in 1..size {
        let (p, a) = parent[y];
        for x in 0..size {
            let xp = mult[x * size + p] as usize;
            mult[x * size + y] = right[xp * k + a] as u32;
        }
    }
    let monoid = Monoid::from_trusted(size, 0, mult);
    let letter_image = (0..k).map(|a| right[a]).collect();
    Morphism::new(d.alphabet().clone(), Arc::new(monoid), letter_image)
}

/// Syntactic morphism of L(d) with its accepting set.
pub fn syntactic_morphism(d: &Dfa) -> Result<RecognizedLanguage> {
    let min = d.minimize();
    let morphism = transition_monoid(&min)?;
    let reps = morphism.representatives();
    let accepting = reps
        .iter()
        .map(|w| min.accepts(w.as_deref().expect("transition monoid is surjective")))
        .collect();
    Ok(RecognizedLanguage { morphism, accepting })
}

/// Partitions words of length ≤ `max_len` by their state transformation on the
/// minimal DFA, computed by direct simulation. Classes appear in order of their
/// shortlex-first member.
pub fn brute_force_congruence(d: &Dfa, max_len: usize) -> Vec<Vec<Word>> {
    let min = d.minimize();
    let n = min.num_states();
    let mut classes: Vec<Vec<Word>> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    for w in min.alphabet().words_up_to(max_len) {
        let t: Vec<usize> = (0..n).map(|q| min.run(q, &w)).collect();
        match index.get(&t) {
            Some(&c) => classes[c].push(w),
            None => {
                index.insert(t, classes.len());
                classes.push(vec![w]);
            }
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::regex_dfa;

    fn lang(re: &str, al: &str) -> RecognizedLanguage {
        let al = Alphabet::from_chars(al).unwrap();
        syntactic_morphism(&regex_dfa(re, &al).unwrap()).unwrap()
    }

    #[test]
    fn ab_star_monoid() {
        let l = lang("(ab)*", "ab");
        let m = l.morphism.monoid();
        assert_eq!(m.size(), 6);
        let a = l.morphism.eval(&[0]);
        let b = l.morphism.eval(&[1]);
        let zero = l.morphism.eval(&[0, 0]);
        assert_eq!(l.morphism.eval(&[1, 1]), zero);
        assert_eq!(m.mul(zero, a), zero);
        let ab = m.mul(a, b);
        assert!(m.is_idempotent(ab));
        assert_eq!(m.omega_power(a), zero);
    }

    #[test]
    fn parity_and_contains_a() {
        let p = lang("(aa)*", "a");
        assert_eq!(p.morphism.monoid().size(), 2);
        assert_eq!(p.accepting_elements(), vec![0]);
        let c = lang("(a|b)*a(a|b)*", "ab");
        assert_eq!(c.morphism.monoid().size(), 2);
        let s = c.morphism.eval(&[0]);
        assert_eq!(c.accepting_elements(), vec![s]);
        let u = lang("(a|b)*", "ab");
        assert_eq!(u.morphism.monoid().size(), 1);
    }

    #[test]
    fn value_sets() {
        let l = lang("(ab)*", "ab");
        let al = l.morphism.alphabet().clone();
        let both = regex_dfa("(a|b)*a(a|b)* & (a|b)*b(a|b)*", &al).unwrap();
        let vs = l.morphism.value_set(&both).unwrap();
        assert_eq!(vs.iter().filter(|&&b| b).count(), 5);
        assert!(!vs[0]);
        assert!(l.morphism.value_set(&Dfa::empty(&al)).unwrap().iter().all(|&b| !b));
    }

    #[test]
    fn json_round_trip() {
        let l = lang("(ab)*", "ab");
        let j = serde_json::to_string(&l.to_json()).unwrap();
        let back: MonoidJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_language().unwrap(), l);
    }
}
