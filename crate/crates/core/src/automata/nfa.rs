use std::collections::{HashMap, VecDeque};

use super::alphabet::{Alphabet, Letter, Word};
use super::dfa::Dfa;
use crate::error::{Error, Result};

/// Default cap on the number of subset-construction states.
pub const DEFAULT_STATE_LIMIT: usize = 1_000_000;

/// Nondeterministic automaton without ε-transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: Vec<usize>,
    accepting: Vec<bool>,
    succ: Vec<Vec<(Letter, usize)>>,
}

impl Nfa {
    pub fn with_states(alphabet: Alphabet, n: usize) -> Self {
        Nfa { alphabet, initial: Vec::new(), accepting: vec![false; n], succ: vec![Vec::new(); n] }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.succ.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn successors(&self, q: usize) -> &[(Letter, usize)] {
        &self.succ[q]
    }

    pub fn add_state(&mut self) -> usize {
        self.succ.push(Vec::new());
        self.accepting.push(false);
        self.succ.len() - 1
    }

    pub fn add_initial(&mut self, q: usize) {
        if !self.initial.contains(&q) {
            self.initial.push(q);
        }
    }

    pub fn set_accepting(&mut self, q: usize, yes: bool) {
        self.accepting[q] = yes;
    }

    pub fn add_transition(&mut self, p: usize, a: Letter, q: usize) {
        if !self.succ[p].contains(&(a, q)) {
            self.succ[p].push((a, q));
        }
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(p, v)| v.iter().map(move |&(a, q)| (p, a, q)))
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        Nfa::with_states(alphabet.clone(), 0)
    }

    pub fn epsilon(alphabet: &Alphabet) -> Self {
        let mut n = Nfa::with_states(alphabet.clone(), 1);
        n.add_initial(0);
        n.set_accepting(0, true);
        n
    }

    pub fn letter(alphabet: &Alphabet, a: Letter) -> Self {
        Self::word(alphabet, &[a])
    }

    pub fn word(alphabet: &Alphabet, w: &[Letter]) -> Self {
        let mut n = Nfa::with_states(alphabet.clone(), w.len() + 1);
        n.add_initial(0);
        for (i, &a) in w.iter().enumerate() {
            n.add_transition(i, a, i + 1);
        }
        n.set_accepting(w.len(), true);
        n
    }

    /// A single letter class: one transition per listed letter.
    pub fn letters(alphabet: &Alphabet, set: &[Letter]) -> Self {
        let mut n = Nfa::with_states(alphabet.clone(), 2);
        n.add_initial(0);
        for &a in set {
            n.add_transition(0, a, 1);
        }
        n.set_accepting(1, true);
        n
    }

    pub fn accepts_empty(&self) -> bool {
        self.initial.iter().any(|&q| self.accepting[q])
    }

    fn check_same(&self, other: &Nfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    /// Copies `other` into `self`, returning the state offset.
    fn absorb(&mut self, other: &Nfa) -> usize {
        let off = self.num_states();
        for q in 0..other.num_states() {
            self.succ.push(other.succ[q].iter().map(|&(a, r)| (a, r + off)).collect());
            self.accepting.push(other.accepting[q]);
        }
        off
    }

    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.check_same(other)?;
        let mut n = self.clone();
        let off = n.absorb(other);
        for &q in &other.initial {
            n.add_initial(q + off);
        }
        Ok(n)
    }

    pub fn concat(&self, other: &Nfa) -> Result<Nfa> {
        self.check_same(other)?;
        let mut n = self.clone();
        let off = n.absorb(other);
        let left_states = self.num_states();
        for p in 0..left_states {
            for &(a, q) in &self.succ[p] {
                if self.accepting[q] {
                    for &i in &other.initial {
                        n.add_transition(p, a, i + off);
                    }
                }
            }
        }
        if self.accepts_empty() {
            for &i in &other.initial {
                n.add_initial(i + off);
            }
        }
        let right_eps = other.accepts_empty();
        for q in 0..left_states {
            n.accepting[q] = right_eps && self.accepting[q];
        }
        Ok(n)
    }

    /// Kleene star.
    pub fn star(&self) -> Nfa {
        let mut n = self.plus();
        let s = n.add_state();
        n.set_accepting(s, true);
        let init = n.initial.clone();
        for &i in &init {
            let out = n.succ[i].clone();
            for (a, q) in out {
                n.add_transition(s, a, q);
            }
        }
        n.initial = vec![s];
        n
    }

    /// L⁺ = L L*.
    pub fn plus(&self) -> Nfa {
        let mut n = self.clone();
        for p in 0..self.num_states() {
            for &(a, q) in &self.succ[p] {
                if self.accepting[q] {
                    for &i in &self.initial {
                        n.add_transition(p, a, i);
                    }
                }
            }
        }
        n
    }

    pub fn reverse(&self) -> Nfa {
        let mut n = Nfa::with_states(self.alphabet.clone(), self.num_states());
        for (p, a, q) in self.transitions() {
            n.add_transition(q, a, p);
        }
        for q in 0..self.num_states() {
            if self.accepting[q] {
                n.add_initial(q);
            }
        }
        for &q in &self.initial {
            n.accepting[q] = true;
        }
        n
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut cur = vec![false; self.num_states()];
        for &q in &self.initial {
            cur[q] = true;
        }
        for &a in w {
            let mut next = vec![false; self.num_states()];
            for (p, on) in cur.iter().enumerate() {
                if *on {
                    for &(b, q) in &self.succ[p] {
                        if b == a {
                            next[q] = true;
                        }
                    }
                }
            }
            cur = next;
        }
        cur.iter().zip(&self.accepting).any(|(c, f)| *c && *f)
    }

    /// Image of the language under a letter-to-word substitution into `target`.
    /// Every image must be non-empty.
    pub fn substitute(&self, target: &Alphabet, images: &[Word]) -> Result<Nfa> {
        if images.len() != self.alphabet.len() {
            return Err(Error::AlphabetMismatch);
        }
        if images.iter().any(|w| w.is_empty()) {
            return Err(Error::invalid("substitution images must be non-empty"));
        }
        let mut n = Nfa::with_states(target.clone(), self.num_states());
        for q in 0..self.num_states() {
            n.accepting[q] = self.accepting[q];
        }
        n.initial = self.initial.clone();
        for (p, a, q) in self.transitions() {
            let img = &images[a];
            let mut cur = p;
            for &b in &img[..img.len() - 1] {
                let s = n.add_state();
                n.add_transition(cur, b, s);
                cur = s;
            }
            n.add_transition(cur, img[img.len() - 1], q);
        }
        Ok(n)
    }

    pub fn determinize(&self) -> Result<Dfa> {
        self.determinize_with_limit(DEFAULT_STATE_LIMIT)
    }

    /// Subset construction over reachable subsets.
    pub fn determinize_with_limit(&self, limit: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let mut start: Vec<usize> = self.initial.clone();
        start.sort_unstable();
        start.dedup();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut delta: Vec<usize> = Vec::new();
        index.insert(start.clone(), 0);
        sets.push(start);
        let mut queue = VecDeque::from([0usize]);
        let mut mark = vec![usize::MAX; self.num_states()];
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); k];
        while let Some(i) = queue.pop_front() {
            for b in buckets.iter_mut() {
                b.clear();
            }
            for &p in &sets[i] {
                for &(a, q) in &self.succ[p] {
                    buckets[a].push(q);
                }
            }
            let mut row = Vec::with_capacity(k);
            for (a, bucket) in buckets.iter_mut().enumerate() {
                let mut t: Vec<usize> = Vec::with_capacity(bucket.len());
                for &q in bucket.iter() {
                    if mark[q] != a + i * k {
                        mark[q] = a + i * k;
                        t.push(q);
                    }
                }
                t.sort_unstable();
                let id = match index.get(&t) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        if id >= limit {
                            return Err(Error::resource(format!(
                                "subset construction exceeded {limit} states"
                            )));
                        }
                        index.insert(t.clone(), id);
                        sets.push(t);
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            if delta.len() < (i + 1) * k {
                delta.resize((i + 1) * k, 0);
            }
            delta[i * k..(i + 1) * k].copy_from_slice(&row);
        }
        delta.resize(sets.len() * k, 0);
        let accepting = sets.iter().map(|s| s.iter().any(|&q| self.accepting[q])).collect();
        Dfa::from_parts(self.alphabet.clone(), 0, delta, accepting)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn combinators_match_definitions() {
        let al = ab();
        let a = Nfa::letter(&al, 0);
        let b = Nfa::letter(&al, 1);
        let ab_star = a.concat(&b).unwrap().star();
        for w in al.words_up_to(6) {
            let expect = w.len() % 2 == 0 && w.chunks(2).all(|c| c == [0, 1]);
            assert_eq!(ab_star.accepts(&w), expect, "{w:?}");
        }
        let a_plus = a.plus();
        assert!(!a_plus.accepts(&[]));
        assert!(a_plus.accepts(&[0, 0, 0]));
        let u = a.union(&Nfa::epsilon(&al)).unwrap();
        assert!(u.accepts(&[]) && u.accepts(&[0]) && !u.accepts(&[1]));
    }

    #[test]
    fn reverse_and_substitute() {
        let al = ab();
        let n = Nfa::word(&al, &[0, 0, 1]);
        assert!(n.reverse().accepts(&[1, 0, 0]));
        let s = n.substitute(&al, &[vec![1], vec![0, 0]]).unwrap();
        assert!(s.accepts(&[1, 1, 0, 0]));
        assert!(!s.accepts(&[1, 1, 0]));
    }
}
