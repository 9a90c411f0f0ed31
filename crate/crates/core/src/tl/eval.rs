use super::formula::TlFormula;
use crate::automata::Letter;
use crate::error::{Error, Result};

/// Truth value of `f` at every position 0..=|w|+1 of `w`.
pub fn satisfaction(f: &TlFormula, w: &[Letter]) -> Vec<bool> {
    let n = w.len() + 2;
    match f {
        TlFormula::True => vec![true; n],
        TlFormula::False => vec![false; n],
        TlFormula::Min => (0..n).map(|i| i == 0).collect(),
        TlFormula::Max => (0..n).map(|i| i == n - 1).collect(),
        TlFormula::Letter(a) => (0..n).map(|i| i >= 1 && i < n - 1 && w[i - 1] == *a).collect(),
        TlFormula::Not(g) => satisfaction(g, w).into_iter().map(|b| !b).collect(),
        TlFormula::And(g, h) => {
            satisfaction(g, w).into_iter().zip(satisfaction(h, w)).map(|(x, y)| x && y).collect()
        }
        TlFormula::Or(g, h) => {
            satisfaction(g, w).into_iter().zip(satisfaction(h, w)).map(|(x, y)| x || y).collect()
        }
        TlFormula::Finally(l, g) => {
            let sub = satisfaction(g, w);
            let d = l.dfa();
            let q = d.num_states();
            let mut out = vec![false; n];
            // s[p]: from L-state p, some j > i has δ(p, infix(i,j)) accepting and g at j
            let mut s = vec![false; q];
            for i in (0..n - 1).rev() {
                let mut next = vec![false; q];
                for p in 0..q {
                    let via_letter = i < w.len() && s[d.step(p, w[i])];
                    next[p] = (sub[i + 1] && d.is_accepting(p)) || via_letter;
                }
                s = next;
                out[i] = s[d.initial()];
            }
            out
        }
        TlFormula::Previously(l, g) => {
            let sub = satisfaction(g, w);
            let d = l.dfa();
            let q = d.num_states();
            let mut out = vec![false; n];
            // t[p]: some j < i with δ(q0, infix(j,i)) = p and g at j
            let mut t = vec![false; q];
            for i in 1..n {
                let mut next = vec![false; q];
                if i >= 2 {
                    let a = w[i - 2];
                    for p in (0..q).filter(|&p| t[p]) {
                        next[d.step(p, a)] = true;
                    }
                }
                if sub[i - 1] {
                    next[d.initial()] = true;
                }
                t = next;
                out[i] = (0..q).any(|p| t[p] && d.is_accepting(p));
            }
            out
        }
    }
}

/// w, i ⊨ f.
pub fn eval(f: &TlFormula, w: &[Letter], i: usize) -> Result<bool> {
    if i > w.len() + 1 {
        return Err(Error::PositionOutOfRange { position: i, len: w.len() });
    }
    Ok(satisfaction(f, w)[i])
}

/// Membership in L(f) = {w | w, 0 ⊨ f}.
pub fn language_of(f: &TlFormula) -> impl Fn(&[Letter]) -> bool + '_ {
    move |w| satisfaction(f, w)[0]
}
