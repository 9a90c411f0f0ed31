use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::dfa::Dfa;
use super::nfa::Nfa;
use crate::error::{Error, Result};

/// Wire format shared by DFAs and NFAs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: Vec<usize>,
    pub accepting: Vec<usize>,
    pub transitions: Vec<(usize, String, usize)>,
}

impl From<&Nfa> for AutomatonJson {
    fn from(n: &Nfa) -> Self {
        let al = n.alphabet();
        AutomatonJson {
            format: None,
            alphabet: al.letters().to_vec(),
            states: n.num_states(),
            initial: n.initial().to_vec(),
            accepting: (0..n.num_states()).filter(|&q| n.is_accepting(q)).collect(),
            transitions: n.transitions().map(|(p, a, q)| (p, al.name(a).to_string(), q)).collect(),
        }
    }
}

impl From<&Dfa> for AutomatonJson {
    fn from(d: &Dfa) -> Self {
        let al = d.alphabet();
        let mut transitions = Vec::new();
        for q in 0..d.num_states() {
            for a in 0..al.len() {
                transitions.push((q, al.name(a).to_string(), d.step(q, a)));
            }
        }
        AutomatonJson {
            format: None,
            alphabet: al.letters().to_vec(),
            states: d.num_states(),
            initial: vec![d.initial()],
            accepting: d.accepting_states().collect(),
            transitions,
        }
    }
}

impl AutomatonJson {
    pub fn to_nfa(&self) -> Result<Nfa> {
        let al = Alphabet::new(self.alphabet.iter().cloned())?;
        let mut n = Nfa::with_states(al.clone(), self.states);
        let check = |q: usize| {
            if q < self.states {
                Ok(q)
            } else {
                Err(Error::invalid(format!("state {q} out of range")))
            }
        };
        for &q in &self.initial {
            n.add_initial(check(q)?);
        }
        for &q in &self.accepting {
            n.set_accepting(check(q)?, true);
        }
        for (p, a, q) in &self.transitions {
            n.add_transition(check(*p)?, al.lookup(a)?, check(*q)?);
        }
        Ok(n)
    }

    /// Reads the automaton as a DFA, determinizing when it is not already deterministic
    /// and complete.
    pub fn to_dfa(&self) -> Result<Dfa> {
        let n = self.to_nfa()?;
        let k = n.alphabet().len();
        if self.initial.len() == 1 && self.states > 0 {
            let mut delta = vec![usize::MAX; self.states * k];
            let mut ok = true;
            for (p, a, q) in n.transitions() {
                let slot = &mut delta[p * k + a];
                if *slot != usize::MAX && *slot != q {
                    ok = false;
                    break;
                }
                *slot = q;
            }
            if ok && delta.iter().all(|&q| q != usize::MAX) {
                let accepting = (0..self.states).map(|q| n.is_accepting(q)).collect();
                return Dfa::from_parts(n.alphabet().clone(), self.initial[0], delta, accepting);
            }
        }
        n.determinize()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("automaton serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::invalid(format!("automaton JSON: {e}")))
    }
}

impl Dfa {
    pub fn to_json(&self) -> AutomatonJson {
        AutomatonJson::from(self)
    }
}

impl Nfa {
    pub fn to_json(&self) -> AutomatonJson {
        AutomatonJson::from(self)
    }
}
