//! Formula → DFA.
//!
//! Every subformula φ becomes a *marked graph*: a DFA over symbols
//! (σ, m) with σ ∈ A ∪ {◁, ▷} and m ∈ {0,1}, accepting exactly the words
//! ◁ w ▷ whose mark track is the satisfaction vector of φ on w.

use std::collections::HashMap;

use super::formula::TlFormula;
use crate::automata::{Alphabet, Dfa, Nfa, DEFAULT_STATE_LIMIT};
use crate::error::Result;

/// Marked-graph alphabet: symbol index `sym * 2 + mark`; letters first, then ◁, ▷.
struct Marks {
    k: usize,
    alphabet: Alphabet,
}

impl Marks {
    fn new(k: usize) -> Self {
        let names = (0..(k + 2) * 2).map(|i| format!("s{}m{}", i / 2, i % 2));
        Marks { k, alphabet: Alphabet::new(names).expect("synthetic names are valid") }
    }

    fn left(&self) -> usize {
        self.k
    }

    fn right(&self) -> usize {
        self.k + 1
    }

    fn syms(&self) -> usize {
        self.k + 2
    }

    fn is_letter(&self, sym: usize) -> bool {
        sym < self.k
    }

    /// Sentinel-shaped words with the mark given by a position-local predicate.
    fn local(&self, pred: impl Fn(usize) -> bool) -> Dfa {
        // 0 start, 1 inside, 2 done, 3 dead
        let (left, right) = (self.left(), self.right());
        Dfa::from_fn(
            &self.alphabet,
            4,
            0,
            |q, x| {
                let (sym, m) = (x / 2, x % 2 == 1);
                if m != pred(sym) {
                    return 3;
                }
                match (q, sym) {
                    (0, s) if s == left => 1,
                    (1, s) if s == right => 2,
                    (1, s) if s < self.k => 1,
                    _ => 3,
                }
            },
            |q| q == 2,
        )
        .unwrap()
        .minimize()
    }

    fn negate(&self, g: &Dfa) -> Dfa {
        Dfa::from_fn(&self.alphabet, g.num_states(), g.initial(), |q, x| g.step(q, x ^ 1), |q| {
            g.is_accepting(q)
        })
        .unwrap()
    }

    /// Marks are op(m1, m2) of the two children, child tracks projected away.
    fn combine(&self, g: &Dfa, h: &Dfa, op: fn(bool, bool) -> bool, cap: usize) -> Result<Dfa> {
        let nh = h.num_states();
        let mut n = Nfa::with_states(self.alphabet.clone(), g.num_states() * nh);
        n.add_initial(g.initial() * nh + h.initial());
        for p in 0..g.num_states() {
            for q in 0..nh {
                let id = p * nh + q;
                n.set_accepting(id, g.is_accepting(p) && h.is_accepting(q));
                for sym in 0..self.syms() {
                    for m1 in 0..2 {
                        for m2 in 0..2 {
                            let m = usize::from(op(m1 == 1, m2 == 1));
                            let p2 = g.step(p, sym * 2 + m1);
                            let q2 = h.step(q, sym * 2 + m2);
                            n.add_transition(id, sym * 2 + m, p2 * nh + q2);
                        }
                    }
                }
            }
        }
        Ok(n.determinize_with_limit(cap)?.minimize())
    }

    /// Marks of F_L ψ, given ψ's graph. Built right to left on the reversed word,
    /// where the state set S(i) of the parameter DFA evolves deterministically, then
    /// reversed and determinized.
    fn finally(&self, l: &Dfa, g: &Dfa, cap: usize) -> Result<Dfa> {
        let q = l.num_states();
        let q0 = l.initial();
        let ng = g.num_states();
        // reversed child transitions: pred[state][sym*2+m] = predecessors
        let mut pred: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); self.syms() * 2]; ng];
        for p in 0..ng {
            for x in 0..self.syms() * 2 {
                pred[g.step(p, x)][x].push(p);
            }
        }
        let mut ids: HashMap<(usize, Vec<bool>), usize> = HashMap::new();
        let mut states: Vec<(usize, Vec<bool>)> = Vec::new();
        let mut rev = Nfa::with_states(self.alphabet.clone(), 0);
        let mut intern = |key: (usize, Vec<bool>), rev: &mut Nfa, states: &mut Vec<_>| {
            *ids.entry(key.clone()).or_insert_with(|| {
                states.push(key);
                rev.add_state()
            })
        };
        for p in (0..ng).filter(|&p| g.is_accepting(p)) {
            let id = intern((p, vec![false; q]), &mut rev, &mut states);
            rev.add_initial(id);
        }
        let mut i = 0;
        while i < states.len() {
            let (p, s) = states[i].clone();
            if p == g.initial() {
                rev.set_accepting(i, true);
            }
            let mark = s[q0];
            for sym in 0..self.syms() {
                for mpsi in 0..2 {
                    // S(j-1) from S(j), the symbol at j and ψ's mark at j
                    let mut prev = vec![false; q];
                    for r in 0..q {
                        let via = self.is_letter(sym) && s[l.step(r, sym)];
                        prev[r] = (mpsi == 1 && l.is_accepting(r)) || via;
                    }
                    for &p2 in &pred[p][sym * 2 + mpsi] {
                        let to = intern((p2, prev.clone()), &mut rev, &mut states);
                        rev.add_transition(i, sym * 2 + usize::from(mark), to);
                    }
                }
            }
            if states.len() > cap {
                return Err(crate::Error::resource("formula compilation exceeded the state cap"));
            }
            i += 1;
        }
        Ok(rev.reverse().determinize_with_limit(cap)?.minimize())
    }

    /// Marks of P_L ψ: left to right, the set T(i) evolves deterministically.
    fn previously(&self, l: &Dfa, g: &Dfa, cap: usize) -> Result<Dfa> {
        let q = l.num_states();
        let mut ids: HashMap<(usize, Vec<bool>), usize> = HashMap::new();
        let mut states: Vec<(usize, Vec<bool>)> = Vec::new();
        let mut n = Nfa::with_states(self.alphabet.clone(), 0);
        let start = (g.initial(), vec![false; q]);
        ids.insert(start.clone(), n.add_state());
        states.push(start);
        n.add_initial(0);
        let mut i = 0;
        while i < states.len() {
            let (p, t) = states[i].clone();
            if g.is_accepting(p) {
                n.set_accepting(i, true);
            }
            let mark = (0..q).any(|r| t[r] && l.is_accepting(r));
            for sym in 0..self.syms() {
                for mpsi in 0..2 {
                    let mut next = vec![false; q];
                    if self.is_letter(sym) {
                        for r in (0..q).filter(|&r| t[r]) {
                            next[l.step(r, sym)] = true;
                        }
                    }
                    if mpsi == 1 {
                        next[l.initial()] = true;
                    }
                    let key = (g.step(p, sym * 2 + mpsi), next);
                    let to = *ids.entry(key.clone()).or_insert_with(|| {
                        states.push(key);
                        n.add_state()
                    });
                    n.add_transition(i, sym * 2 + usize::from(mark), to);
                }
            }
            if states.len() > cap {
                return Err(crate::Error::resource("formula compilation exceeded the state cap"));
            }
            i += 1;
        }
        Ok(n.determinize_with_limit(cap)?.minimize())
    }
}

struct Compiler {
    marks: Marks,
    cap: usize,
    cache: HashMap<TlFormula, Dfa>,
}

impl Compiler {
    fn graph(&mut self, f: &TlFormula) -> Result<Dfa> {
        if let Some(g) = self.cache.get(f) {
            return Ok(g.clone());
        }
        let m = &self.marks;
        let (left, right) = (m.left(), m.right());
        let g = match f {
            TlFormula::True => m.local(|_| true),
            TlFormula::False => m.local(|_| false),
            TlFormula::Min => m.local(|s| s == left),
            TlFormula::Max => m.local(|s| s == right),
            TlFormula::Letter(a) => {
                let a = *a;
                m.local(move |s| s == a)
            }
            TlFormula::Not(h) => {
                let gh = self.graph(h)?;
                self.marks.negate(&gh).minimize()
            }
            TlFormula::And(x, y) => {
                let (gx, gy) = (self.graph(x)?, self.graph(y)?);
                self.marks.combine(&gx, &gy, |a, b| a && b, self.cap)?
            }
            TlFormula::Or(x, y) => {
                let (gx, gy) = (self.graph(x)?, self.graph(y)?);
                self.marks.combine(&gx, &gy, |a, b| a || b, self.cap)?
            }
            TlFormula::Finally(l, h) => {
                let gh = self.graph(h)?;
                self.marks.finally(l.dfa(), &gh, self.cap)?
            }
            TlFormula::Previously(l, h) => {
                let gh = self.graph(h)?;
                self.marks.previously(l.dfa(), &gh, self.cap)?
            }
        };
        self.cache.insert(f.clone(), g.clone());
        Ok(g)
    }
}

/// Compiles `f` over `alphabet` into the canonical minimal DFA of L(f).
pub fn compile(f: &TlFormula, alphabet: &Alphabet) -> Result<Dfa> {
    compile_with_cap(f, alphabet, DEFAULT_STATE_LIMIT)
}

pub fn compile_with_cap(f: &TlFormula, alphabet: &Alphabet, cap: usize) -> Result<Dfa> {
    f.check_alphabet(alphabet)?;
    let k = alphabet.len();
    let mut c = Compiler { marks: Marks::new(k), cap, cache: HashMap::new() };
    let g = c.graph(f)?;
    let m = &c.marks;
    // root mark 1 at ◁, then project marks and strip sentinels
    let start = g.step(g.initial(), m.left() * 2 + 1);
    let mut n = Nfa::with_states(alphabet.clone(), g.num_states());
    n.add_initial(start);
    for p in 0..g.num_states() {
        let acc = (0..2).any(|mk| g.is_accepting(g.step(p, m.right() * 2 + mk)));
        n.set_accepting(p, acc);
        for a in 0..k {
            for mk in 0..2 {
                n.add_transition(p, a, g.step(p, a * 2 + mk));
            }
        }
    }
    Ok(n.determinize_with_limit(cap)?.minimize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::regex_dfa;
    use crate::tl::{language_of, parse_formula};

    fn check(text: &str, al: &Alphabet) -> Dfa {
        let f = parse_formula(text, al).unwrap();
        let d = compile(&f, al).unwrap();
        let l = language_of(&f);
        for w in al.words_up_to(6) {
            assert_eq!(d.accepts(&w), l(&w), "{text} on {w:?}");
        }
        d
    }

    #[test]
    fn simple_formulas() {
        let al = Alphabet::from_chars("ab").unwrap();
        assert_eq!(check("F{max}", &al), Dfa::universal(&al).minimize());
        let d = check("F[(ab)*]{max}", &al);
        assert_eq!(d, regex_dfa("(ab)*", &al).unwrap());
        let d = check("F[~]{'a'}", &al);
        assert_eq!(d, regex_dfa("a(a|b)*", &al).unwrap());
        check("!F{!max}", &al);
    }

    #[test]
    fn nested_and_past() {
        let al = Alphabet::from_chars("ab").unwrap();
        check("F{'a' & P[b*]{min}} & !F{'b' & X{'b'}}", &al);
        check("F[a*]{'b' & !P[(a|b)*b(a|b)*]{'a'}}", &al);
        check("X{X{max}} | Y{T}", &al);
    }
}
