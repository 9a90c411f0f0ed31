//! Equational membership tests for TL(C), IPol₂(C) and SF, and the class dispatcher.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{syntactic_morphism, Elem, Monoid, Morphism};
use crate::automata::{Dfa, Word};
use crate::cpairs::{at_pairs, dd_pairs, mod_pairs, st_pairs, PairSet};
use crate::error::{Error, Result};

/// Witness words longer than this are omitted from certificates.
pub const WITNESS_LENGTH_BUDGET: usize = 12;

/// A failing instance (e, s, t) of an equation, with both sides evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub e: Elem,
    pub s: Elem,
    pub t: Elem,
    pub lhs: Elem,
    pub rhs: Elem,
}

fn omega_table(m: &Monoid) -> Vec<Elem> {
    (0..m.size()).map(|x| m.omega_power(x)).collect()
}

/// (esete)^ω = (esete)^ω ete (esete)^ω for idempotent e and (e,s), (e,t) ∈ pairs.
pub fn tl_counterexample(m: &Monoid, pairs: &PairSet) -> Option<Counterexample> {
    let omega = omega_table(m);
    for e in m.idempotents() {
        let partners: Vec<Elem> = pairs.partners(e).collect();
        for &s in &partners {
            let ese = m.mul(m.mul(e, s), e);
            for &t in &partners {
                let ete = m.mul(m.mul(e, t), e);
                let f = omega[m.mul(ese, ete)];
                let rhs = m.mul(m.mul(f, ete), f);
                if f != rhs {
                    return Some(Counterexample { e, s, t, lhs: f, rhs });
                }
            }
        }
    }
    None
}

pub fn check_eq_tl(m: &Monoid, pairs: &PairSet) -> bool {
    tl_counterexample(m, pairs).is_none()
}

/// (esete)^{ω+1} = (esete)^ω ete (esete)^ω for idempotent e, (e,s) ∈ pairs, any t.
pub fn ipol2_counterexample(m: &Monoid, pairs: &PairSet) -> Option<Counterexample> {
    let omega = omega_table(m);
    for e in m.idempotents() {
        for s in pairs.partners(e) {
            let ese = m.mul(m.mul(e, s), e);
            for t in 0..m.size() {
                let ete = m.mul(m.mul(e, t), e);
                let x = m.mul(ese, ete);
                let f = omega[x];
                let lhs = m.mul(f, x);
                let rhs = m.mul(m.mul(f, ete), f);
                if lhs != rhs {
                    return Some(Counterexample { e, s, t, lhs, rhs });
                }
            }
        }
    }
    None
}

pub fn check_eq_ipol2(m: &Monoid, pairs: &PairSet) -> bool {
    ipol2_counterexample(m, pairs).is_none()
}

/// s^{ω+1} = s^ω for every s; returns the first offending element.
pub fn aperiodicity_violation(m: &Monoid) -> Option<Elem> {
    (0..m.size()).find(|&s| m.omega_plus_one(s) != m.omega_power(s))
}

pub fn is_aperiodic(m: &Monoid) -> bool {
    aperiodicity_violation(m).is_none()
}

/// Classes with a membership decider.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassName {
    #[serde(rename = "SF")]
    Sf,
    #[serde(rename = "TL_ST")]
    TlSt,
    #[serde(rename = "TLX")]
    Tlx,
    #[serde(rename = "TL_MOD")]
    TlMod,
    /// Also TL(AT).
    #[serde(rename = "TL2_ST")]
    Tl2St,
    #[serde(rename = "IPOL2_ST")]
    Ipol2St,
    #[serde(rename = "TL3_ST")]
    Tl3St,
    #[serde(rename = "TL_LT")]
    TlLt,
    #[serde(rename = "TL_GR")]
    TlGr,
    #[serde(rename = "TL_AMT")]
    TlAmt,
}

impl ClassName {
    pub fn name(self) -> &'static str {
        match self {
            ClassName::Sf => "SF",
            ClassName::TlSt => "TL_ST",
            ClassName::Tlx => "TLX",
            ClassName::TlMod => "TL_MOD",
            ClassName::Tl2St => "TL2_ST",
            ClassName::Ipol2St => "IPOL2_ST",
            ClassName::Tl3St => "TL3_ST",
            ClassName::TlLt => "TL_LT",
            ClassName::TlGr => "TL_GR",
            ClassName::TlAmt => "TL_AMT",
        }
    }
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String =
            s.chars().filter(|c| !matches!(c, '-' | '_' | ' ')).collect::<String>().to_lowercase();
        Ok(match norm.as_str() {
            "sf" => ClassName::Sf,
            "tlst" | "tl" => ClassName::TlSt,
            "tlx" | "tldd" => ClassName::Tlx,
            "tlmod" => ClassName::TlMod,
            "tl2st" | "tlat" => ClassName::Tl2St,
            "ipol2st" => ClassName::Ipol2St,
            "tl3st" => ClassName::Tl3St,
            "tllt" | "tl2dd" => ClassName::TlLt,
            "tlgr" => ClassName::TlGr,
            "tlamt" => ClassName::TlAmt,
            _ => return Err(Error::invalid(format!("unknown class `{s}`"))),
        })
    }
}

/// Three-valued answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Unknown => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    EquationVerified,
    Counterexample {
        #[serde(flatten)]
        triple: Counterexample,
        /// Shortest preimages of e, s, t when all fit the length budget.
        words: Option<[String; 3]>,
    },
    NotAperiodic {
        element: Elem,
        word: Option<String>,
    },
    Undetermined {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipOutcome {
    pub class: ClassName,
    pub member: Verdict,
    pub monoid_size: usize,
    pub certificate: Certificate,
}

fn short_word(alpha: &Morphism, reps: &[Option<Word>], x: Elem) -> Option<String> {
    reps[x]
        .as_ref()
        .filter(|w| w.len() <= WITNESS_LENGTH_BUDGET)
        .map(|w| alpha.alphabet().format_word(w))
}

pub(crate) fn certificate_for(alpha: &Morphism, cex: Option<Counterexample>) -> Certificate {
    match cex {
        None => Certificate::EquationVerified,
        Some(c) => {
            let reps = alpha.representatives();
            let words = match (
                short_word(alpha, &reps, c.e),
                short_word(alpha, &reps, c.s),
                short_word(alpha, &reps, c.t),
            ) {
                (Some(a), Some(b), Some(d)) => Some([a, b, d]),
                _ => None,
            };
            Certificate::Counterexample { triple: c, words }
        }
    }
}

/// Pair set used by the TL-level deciders that rely on a base pair engine.
pub fn class_pairs(alpha: &Morphism, class: ClassName) -> Result<PairSet> {
    match class {
        ClassName::TlSt | ClassName::Ipol2St => Ok(st_pairs(alpha)),
        ClassName::Tlx => Ok(dd_pairs(alpha)),
        ClassName::TlMod => mod_pairs(alpha),
        ClassName::Tl2St => at_pairs(alpha),
        ClassName::TlLt | ClassName::TlGr | ClassName::TlAmt => {
            Err(Error::UnsupportedBase(class.name().into()))
        }
        ClassName::Sf | ClassName::Tl3St => {
            Err(Error::invalid(format!("{class} is not decided by a base pair engine")))
        }
    }
}

/// Decides whether L(d) belongs to `class`.
pub fn decide_membership(d: &Dfa, class: ClassName) -> Result<MembershipOutcome> {
    if matches!(class, ClassName::TlLt | ClassName::TlGr | ClassName::TlAmt) {
        return Err(Error::UnsupportedBase(class.name().into()));
    }
    let syn = syntactic_morphism(d)?;
    let alpha = &syn.morphism;
    let m = alpha.monoid();
    let monoid_size = m.size();
    let (member, certificate) = match class {
        ClassName::Sf => match aperiodicity_violation(m) {
            None => (Verdict::True, Certificate::EquationVerified),
            Some(s) => {
                let reps = alpha.representatives();
                (
                    Verdict::False,
                    Certificate::NotAperiodic { element: s, word: short_word(alpha, &reps, s) },
                )
            }
        },
        ClassName::Ipol2St => {
            let cex = ipol2_counterexample(m, &class_pairs(alpha, class)?);
            (Verdict::from_bool(cex.is_none()), certificate_for(alpha, cex))
        }
        ClassName::Tl3St => return crate::tlat::decide_tl3_st_morphism(alpha),
        _ => {
            let cex = tl_counterexample(m, &class_pairs(alpha, class)?);
            (Verdict::from_bool(cex.is_none()), certificate_for(alpha, cex))
        }
    };
    Ok(MembershipOutcome { class, member, monoid_size, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{regex_dfa, Alphabet};

    fn member(re: &str, al: &str, c: ClassName) -> bool {
        let al = Alphabet::from_chars(al).unwrap();
        decide_membership(&regex_dfa(re, &al).unwrap(), c).unwrap().member.as_bool().unwrap()
    }

    #[test]
    fn parity_row() {
        assert!(!member("(aa)*", "a", ClassName::Sf));
        assert!(!member("(aa)*", "a", ClassName::TlSt));
        assert!(member("(aa)*", "a", ClassName::TlMod));
        assert!(!member("(aa)*", "a", ClassName::Tl2St));
    }

    #[test]
    fn ab_star_row() {
        assert!(member("(ab)*", "ab", ClassName::Sf));
        assert!(!member("(ab)*", "ab", ClassName::TlSt));
        assert!(member("(ab)*", "ab", ClassName::Tlx));
        assert!(member("(ab)*", "ab", ClassName::Tl2St));
    }

    #[test]
    fn z2_equations() {
        let z2 = Monoid::cyclic_group(2);
        let full = PairSet::square(&[true, true]);
        let c = tl_counterexample(&z2, &full).expect("parity violates the equation");
        assert_eq!(c.e, 0);
        assert_ne!(c.lhs, c.rhs);
        assert!(!check_eq_ipol2(&z2, &full));
        assert!(check_eq_tl(&z2, &PairSet::diagonal(&[true, true])));
        assert!(!is_aperiodic(&z2));
    }

    #[test]
    fn unsupported_classes() {
        let al = Alphabet::from_chars("a").unwrap();
        let d = regex_dfa("a*", &al).unwrap();
        assert!(matches!(decide_membership(&d, ClassName::TlLt), Err(Error::UnsupportedBase(_))));
    }
}
