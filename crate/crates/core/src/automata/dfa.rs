use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use super::alphabet::{Alphabet, Letter, Word};
use super::nfa::Nfa;
use crate::error::{Error, Result};

/// Boolean combinators for [`Dfa::product`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Diff,
    Xor,
}

impl BoolOp {
    fn apply(self, x: bool, y: bool) -> bool {
        match self {
            BoolOp::And => x && y,
            BoolOp::Or => x || y,
            BoolOp::Diff => x && !y,
            BoolOp::Xor => x != y,
        }
    }
}

/// Complete deterministic automaton. Transition table is row-major by state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    delta: Vec<usize>,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn from_parts(
        alphabet: Alphabet,
        initial: usize,
        delta: Vec<usize>,
        accepting: Vec<bool>,
    ) -> Result<Dfa> {
        let n = accepting.len();
        if n == 0 {
            return Err(Error::invalid("a DFA needs at least one state"));
        }
        if delta.len() != n * alphabet.len() {
            return Err(Error::invalid("transition table is not total"));
        }
        if initial >= n || delta.iter().any(|&q| q >= n) {
            return Err(Error::invalid("state index out of range"));
        }
        Ok(Dfa { alphabet, initial, delta, accepting })
    }

    /// Builds a DFA from a successor function over states `0..n`.
    pub fn from_fn(
        alphabet: &Alphabet,
        n: usize,
        initial: usize,
        step: impl Fn(usize, Letter) -> usize,
        accept: impl Fn(usize) -> bool,
    ) -> Result<Dfa> {
        let k = alphabet.len();
        let mut delta = Vec::with_capacity(n * k);
        for q in 0..n {
            for a in 0..k {
                delta.push(step(q, a));
            }
        }
        Dfa::from_parts(alphabet.clone(), initial, delta, (0..n).map(accept).collect())
    }

    pub fn universal(alphabet: &Alphabet) -> Dfa {
        Dfa::from_fn(alphabet, 1, 0, |_, _| 0, |_| true).unwrap()
    }

    pub fn empty(alphabet: &Alphabet) -> Dfa {
        Dfa::from_fn(alphabet, 1, 0, |_, _| 0, |_| false).unwrap()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&q| self.accepting[q])
    }

    #[inline]
    pub fn step(&self, q: usize, a: Letter) -> usize {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn run(&self, q: usize, w: &[Letter]) -> usize {
        w.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.accepting[self.run(self.initial, w)]
    }

    fn check_same(&self, other: &Dfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for a in 0..self.alphabet.len() {
                let r = self.step(q, a);
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// States from which some accepting state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let k = self.alphabet.len();
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..k {
                pred[self.step(q, a)].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<usize> = self.accepting_states().collect();
        while let Some(q) = stack.pop() {
            for &p in &pred[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    pub fn is_empty(&self) -> bool {
        let r = self.reachable();
        !(0..self.num_states()).any(|q| r[q] && self.accepting[q])
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        for f in d.accepting.iter_mut() {
            *f = !*f;
        }
        d
    }

    /// Synchronous product restricted to reachable pairs.
    pub fn product(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        self.check_same(other)?;
        let k = self.alphabet.len();
        let m = other.num_states();
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(self.initial * m + other.initial, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for a in 0..k {
                let (p2, q2) = (self.step(p, a), other.step(q, a));
                let key = p2 * m + q2;
                let id = *index.entry(key).or_insert_with(|| {
                    pairs.push((p2, q2));
                    pairs.len() - 1
                });
                delta.push(id);
            }
            i += 1;
        }
        let accepting =
            pairs.iter().map(|&(p, q)| op.apply(self.accepting[p], other.accepting[q])).collect();
        Dfa::from_parts(self.alphabet.clone(), 0, delta, accepting)
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, BoolOp::And)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, BoolOp::Or)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, BoolOp::Diff)
    }

    /// Canonical minimal DFA: unreachable states removed, Myhill-Nerode classes merged,
    /// states numbered in breadth-first order from the initial state.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reach = self.reachable();
        let states: Vec<usize> = (0..self.num_states()).filter(|&q| reach[q]).collect();
        let mut class = vec![usize::MAX; self.num_states()];
        for &q in &states {
            class[q] = usize::from(self.accepting[q]);
        }
        let mut count = {
            let mut seen = [false; 2];
            for &q in &states {
                seen[class[q]] = true;
            }
            seen.iter().filter(|&&b| b).count()
        };
        loop {
            let mut sig_index: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![usize::MAX; self.num_states()];
            let mut sig = Vec::with_capacity(k + 1);
            for &q in &states {
                sig.clear();
                sig.push(class[q]);
                for a in 0..k {
                    sig.push(class[self.step(q, a)]);
                }
                let len = sig_index.len();
                next[q] = *sig_index.entry(sig.clone()).or_insert(len);
            }
            let new_count = sig_index.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // breadth-first renumbering of the classes
        let mut order = vec![usize::MAX; count];
        let mut rep = Vec::with_capacity(count);
        order[class[self.initial]] = 0;
        rep.push(self.initial);
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for a in 0..k {
                let r = self.step(q, a);
                let c = class[r];
                if order[c] == usize::MAX {
                    order[c] = rep.len();
                    rep.push(r);
                    queue.push_back(r);
                }
            }
        }
        let mut delta = Vec::with_capacity(rep.len() * k);
        for &q in &rep {
            for a in 0..k {
                delta.push(order[class[self.step(q, a)]]);
            }
        }
        let accepting = rep.iter().map(|&q| self.accepting[q]).collect();
        Dfa { alphabet: self.alphabet.clone(), initial: 0, delta, accepting }
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.product(other, BoolOp::Xor)?.is_empty())
    }

    pub fn is_subset_of(&self, other: &Dfa) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// u⁻¹L.
    pub fn left_quotient(&self, u: &[Letter]) -> Dfa {
        let mut d = self.clone();
        d.initial = self.run(self.initial, u);
        d
    }

    /// Lu⁻¹.
    pub fn right_quotient(&self, u: &[Letter]) -> Dfa {
        let mut d = self.clone();
        d.accepting = (0..self.num_states()).map(|q| self.accepting[self.run(q, u)]).collect();
        d
    }

    /// Accepted words of length at most `max_len` in shortlex order.
    pub fn enumerate_words(&self, max_len: usize) -> Vec<Word> {
        let live = self.coreachable();
        let mut out = Vec::new();
        let mut level: Vec<(Word, usize)> = Vec::new();
        if live[self.initial] {
            level.push((Vec::new(), self.initial));
        }
        for len in 0..=max_len {
            for (w, q) in &level {
                if self.accepting[*q] {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &level {
                for a in 0..self.alphabet.len() {
                    let r = self.step(*q, a);
                    if live[r] {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.push((w2, r));
                    }
                }
            }
            level = next;
        }
        out
    }

    /// Preimage under the morphism sending each letter of `domain` to `images[i]`
    /// (images are words over this DFA's alphabet and may be empty).
    pub fn inverse_image(&self, domain: &Alphabet, images: &[Word]) -> Result<Dfa> {
        if images.len() != domain.len() {
            return Err(Error::AlphabetMismatch);
        }
        Dfa::from_fn(
            domain,
            self.num_states(),
            self.initial,
            |q, b| self.run(q, &images[b]),
            |q| self.accepting[q],
        )
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut n = Nfa::with_states(self.alphabet.clone(), self.num_states());
        n.add_initial(self.initial);
        for q in 0..self.num_states() {
            n.set_accepting(q, self.accepting[q]);
            for a in 0..self.alphabet.len() {
                n.add_transition(q, a, self.step(q, a));
            }
        }
        n
    }

    /// Same automaton re-labelled over a different alphabet of equal size.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<Dfa> {
        if alphabet.len() != self.alphabet.len() {
            return Err(Error::AlphabetMismatch);
        }
        let mut d = self.clone();
        d.alphabet = alphabet;
        Ok(d)
    }

    /// The language reversed, as a canonical minimal DFA.
    pub fn reverse(&self) -> Result<Dfa> {
        Ok(self.to_nfa().reverse().determinize()?.minimize())
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n");
        for q in 0..self.num_states() {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  q{q} [shape={shape}];");
        }
        let _ = writeln!(s, "  start -> q{};", self.initial);
        for q in 0..self.num_states() {
            let mut by_target: Vec<(usize, Vec<&str>)> = Vec::new();
            for a in 0..self.alphabet.len() {
                let r = self.step(q, a);
                match by_target.iter_mut().find(|(t, _)| *t == r) {
                    Some((_, v)) => v.push(self.alphabet.name(a)),
                    None => by_target.push((r, vec![self.alphabet.name(a)])),
                }
            }
            for (r, labels) in by_target {
                let _ = writeln!(s, "  q{q} -> q{r} [label=\"{}\"];", labels.join(","));
            }
        }
        s.push_str("}\n");
        s
    }
}
