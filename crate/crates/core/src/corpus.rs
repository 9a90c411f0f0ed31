//! Witness language families and the letter encodings between them.
//!
//! H_n, K_n and L_n live over {a,b}. U_k and V_k live over A_k = {l0, …, lk}
//! and are pushed to {a,b} by the block encodings β_k and δ_k ∘ γ_k⁻¹.

use serde::{Deserialize, Serialize};

use crate::automata::{Alphabet, Dfa, Letter, Nfa, Word};
use crate::error::{Error, Result};

pub const MAX_H: usize = 6;
pub const MAX_KL: usize = 2;
pub const MAX_UV: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    H,
    K,
    L,
    U,
    V,
    #[serde(rename = "betaU")]
    BetaU,
    #[serde(rename = "deltaGammaU")]
    DeltaGammaU,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        Ok(match s {
            "H" | "h" => Family::H,
            "K" | "k" => Family::K,
            "L" | "l" => Family::L,
            "U" | "u" => Family::U,
            "V" | "v" => Family::V,
            "betaU" | "beta-u" => Family::BetaU,
            "deltaGammaU" | "delta-gamma-u" => Family::DeltaGammaU,
            _ => return Err(Error::invalid(format!("unknown corpus family `{s}`"))),
        })
    }
}

/// A member of a family: `index` is n for H, K, L and k otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub family: Family,
    pub index: usize,
}

impl CorpusSpec {
    pub fn new(family: Family, index: usize) -> Self {
        CorpusSpec { family, index }
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        match self.family {
            Family::U | Family::V => uv_alphabet(self.index),
            _ => ab(),
        }
    }

    pub fn build(&self) -> Result<Dfa> {
        let k = self.index;
        match self.family {
            Family::H => brzozowski_knast(k),
            Family::K => kn_language(k),
            Family::L => ln_language(k),
            Family::U => Ok(uv_languages(k)?.0),
            Family::V => Ok(uv_languages(k)?.1),
            Family::BetaU => encode_beta(k, &uv_languages(k)?.0),
            Family::DeltaGammaU => encode_delta_gamma(k, &uv_languages(k)?.0),
        }
    }

    /// Known facts about the member that no procedure here checks.
    pub fn unchecked_claims(&self) -> Vec<String> {
        let k = self.index;
        match self.family {
            Family::H => vec![format!("H_{k} has dot-depth {k}")],
            Family::K => vec![format!("K_{k} lies outside level {k} of the TL hierarchy over GR")],
            Family::L => vec![format!("L_{k} lies outside level {k} of the TL hierarchy over MOD")],
            Family::U | Family::V => {
                vec![format!("lies outside level {} of the polynomial hierarchy over ST", k + 1)]
            }
            Family::BetaU | Family::DeltaGammaU => {
                vec![format!("encoded U_{k} keeps its hierarchy lower bound over {{a,b}}")]
            }
        }
    }
}

fn ab() -> Result<Alphabet> {
    Alphabet::from_chars("ab")
}

fn guard(what: &str, n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::resource(format!("{what} index {n} above the limit {max}")));
    }
    Ok(())
}

fn finish(n: &Nfa) -> Result<Dfa> {
    Ok(n.determinize()?.minimize())
}

/// H_0 = {ε}, H_n = (a H_{n-1} b)*.
pub fn brzozowski_knast(n: usize) -> Result<Dfa> {
    guard("H", n, MAX_H)?;
    let al = ab()?;
    let (a, b) = (Nfa::letter(&al, 0), Nfa::letter(&al, 1));
    let mut h = Nfa::epsilon(&al);
    for _ in 0..n {
        h = a.concat(&h)?.concat(&b)?.star();
    }
    finish(&h)
}

/// u⁺ v⁺ u
fn block(u: &Nfa, v: &Nfa) -> Result<Nfa> {
    u.plus().concat(&v.plus())?.concat(u)
}

/// K_0 = {ε}, K_n = (Q K_{n-1} R)* with Q = x1⁺x2⁺x1, R = x3⁺x4⁺x3, x_i = ab^i.
pub fn kn_language(n: usize) -> Result<Dfa> {
    guard("K", n, MAX_KL)?;
    let al = ab()?;
    let x = |i: usize| {
        let mut w: Word = vec![0];
        w.extend(std::iter::repeat_n(1, i));
        Nfa::word(&al, &w)
    };
    let q = block(&x(1), &x(2))?;
    let r = block(&x(3), &x(4))?;
    let mut k = Nfa::epsilon(&al);
    for _ in 0..n {
        k = q.concat(&k)?.concat(&r)?.star();
    }
    finish(&k)
}

/// L_0 = a*, L_n = (a + S L_{n-1} T)* with S = Y1⁺Y2⁺Y1, T = Y3⁺Y4⁺Y3, Y_i = a⁺b^i.
pub fn ln_language(n: usize) -> Result<Dfa> {
    guard("L", n, MAX_KL)?;
    let al = ab()?;
    let a = Nfa::letter(&al, 0);
    let y = |i: usize| -> Result<Nfa> {
        let b: Word = std::iter::repeat_n(1, i).collect();
        a.plus().concat(&Nfa::word(&al, &b))
    };
    let s = block(&y(1)?, &y(2)?)?;
    let t = block(&y(3)?, &y(4)?)?;
    let mut l = a.star();
    for _ in 0..n {
        l = a.union(&s.concat(&l)?.concat(&t)?)?.star();
    }
    finish(&l)
}

/// A_k = {l0, …, lk}.
pub fn uv_alphabet(k: usize) -> Result<Alphabet> {
    Alphabet::new((0..=k).map(|i| format!("l{i}")))
}

/// (U_k, V_k) over A_k: U_0 = {ε}, V_0 = A_0⁺, U_k = (l_k V_{k-1})*,
/// V_k = (l_k V_{k-1})* l_k U_{k-1} (l_k V_{k-1})*.
pub fn uv_languages(k: usize) -> Result<(Dfa, Dfa)> {
    guard("U/V", k, MAX_UV)?;
    let al = uv_alphabet(k)?;
    let mut u = Nfa::epsilon(&al);
    let mut v = Nfa::letter(&al, 0).plus();
    for i in 1..=k {
        let li = Nfa::letter(&al, i);
        let loop_ = li.concat(&v)?.star();
        let next_v = loop_.concat(&li)?.concat(&u)?.concat(&loop_)?;
        u = finish(&loop_)?.to_nfa();
        v = finish(&next_v)?.to_nfa();
    }
    let (u, v) = (finish(&u)?, finish(&v)?);
    debug_assert!(u.intersect(&v).map(|d| d.is_empty()).unwrap_or(false));
    Ok((u, v))
}

fn check_uv_alphabet(k: usize, l: &Dfa) -> Result<()> {
    guard("encoding", k, MAX_UV)?;
    if l.alphabet() != &uv_alphabet(k)? {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

/// β_k(l_i) = a^i b a^(k-i).
pub fn beta_image(k: usize, i: Letter) -> Word {
    let mut w = vec![0; i];
    w.push(1);
    w.extend(std::iter::repeat_n(0, k - i));
    w
}

/// δ_k(l_i) = b a^(i+1).
pub fn delta_image(i: Letter) -> Word {
    let mut w = vec![1];
    w.extend(std::iter::repeat_n(0, i + 1));
    w
}

/// β_k(L) over {a,b}.
pub fn encode_beta(k: usize, l: &Dfa) -> Result<Dfa> {
    check_uv_alphabet(k, l)?;
    let images: Vec<Word> = (0..=k).map(|i| beta_image(k, i)).collect();
    finish(&l.to_nfa().substitute(&ab()?, &images)?)
}

/// δ_k(γ_k⁻¹(L)) over {a,b}: b's are inserted anywhere, then l_i ↦ b a^(i+1).
pub fn encode_delta_gamma(k: usize, l: &Dfa) -> Result<Dfa> {
    check_uv_alphabet(k, l)?;
    let al = l.alphabet();
    let mut names: Vec<String> = al.letters().to_vec();
    names.push("b".into());
    let ext = Alphabet::new(names)?;
    let mut gamma: Vec<Word> = (0..=k).map(|i| vec![i]).collect();
    gamma.push(Vec::new());
    let pre = l.inverse_image(&ext, &gamma)?;
    let mut delta: Vec<Word> = (0..=k).map(delta_image).collect();
    delta.push(vec![1]);
    finish(&pre.to_nfa().substitute(&ab()?, &delta)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::regex_dfa;

    fn w(al: &Alphabet, s: &str) -> Word {
        s.chars().map(|c| al.index(&c.to_string()).unwrap()).collect()
    }

    #[test]
    fn h_family() {
        let al = ab().unwrap();
        assert!(brzozowski_knast(0).unwrap().equivalent(&regex_dfa("~", &al).unwrap()).unwrap());
        assert!(brzozowski_knast(1).unwrap().equivalent(&regex_dfa("(ab)*", &al).unwrap()).unwrap());
        let h2 = regex_dfa("(a(ab)*b)*", &al).unwrap();
        assert!(brzozowski_knast(2).unwrap().equivalent(&h2).unwrap());
        assert!(brzozowski_knast(7).is_err());
    }

    #[test]
    fn k_and_l() {
        let al = ab().unwrap();
        assert!(kn_language(0).unwrap().equivalent(&regex_dfa("~", &al).unwrap()).unwrap());
        assert!(ln_language(0).unwrap().equivalent(&regex_dfa("a*", &al).unwrap()).unwrap());
        let k1 = kn_language(1).unwrap();
        assert!(k1.accepts(&w(&al, "ababbababbbabbbbabbb")));
        assert!(!k1.accepts(&w(&al, "ababbab")));
        assert!(kn_language(3).is_err());
    }

    #[test]
    fn uv_small() {
        let (u0, v0) = uv_languages(0).unwrap();
        let al0 = uv_alphabet(0).unwrap();
        assert!(u0.equivalent(&regex_dfa("~", &al0).unwrap()).unwrap());
        assert!(v0.equivalent(&regex_dfa("<l0>+", &al0).unwrap()).unwrap());
        let (u1, _) = uv_languages(1).unwrap();
        let al1 = uv_alphabet(1).unwrap();
        assert!(u1.equivalent(&regex_dfa("(<l1><l0>+)*", &al1).unwrap()).unwrap());
        for k in 0..=3 {
            let (u, v) = uv_languages(k).unwrap();
            assert!(u.intersect(&v).unwrap().is_empty());
        }
    }

    #[test]
    fn encodings() {
        let al = ab().unwrap();
        assert_eq!(beta_image(1, 0), w(&al, "ba"));
        assert_eq!(beta_image(1, 1), w(&al, "ab"));
        let (u1, _) = uv_languages(1).unwrap();
        assert!(encode_beta(1, &u1).unwrap().accepts(&w(&al, "abba")));
        let eps = regex_dfa("~", &uv_alphabet(1).unwrap()).unwrap();
        let d = encode_delta_gamma(1, &eps).unwrap();
        assert!(d.equivalent(&regex_dfa("b*", &al).unwrap()).unwrap());
        assert!(encode_beta(2, &u1).is_err());
    }

    #[test]
    fn specs_build() {
        for fam in [Family::H, Family::K, Family::L, Family::U, Family::V, Family::BetaU, Family::DeltaGammaU] {
            let d = CorpusSpec::new(fam, 1).build().unwrap();
            assert_eq!(d.alphabet(), &CorpusSpec::new(fam, 1).alphabet().unwrap());
        }
    }
}
