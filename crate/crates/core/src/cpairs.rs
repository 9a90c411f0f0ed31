//! C-pair relations: (s, t) is a C-pair for α when α⁻¹(s) cannot be separated
//! from α⁻¹(t) by a language of C.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, Monoid, Morphism};
use crate::error::{Error, Result};

/// A relation on the elements of a monoid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairSet {
    size: usize,
    bits: Vec<bool>,
}

impl PairSet {
    pub fn empty(size: usize) -> Self {
        PairSet { size, bits: vec![false; size * size] }
    }

    /// image × image.
    pub fn square(image: &[bool]) -> Self {
        let mut p = PairSet::empty(image.len());
        for s in 0..image.len() {
            for t in 0..image.len() {
                if image[s] && image[t] {
                    p.insert(s, t);
                }
            }
        }
        p
    }

    pub fn diagonal(image: &[bool]) -> Self {
        let mut p = PairSet::empty(image.len());
        for s in (0..image.len()).filter(|&s| image[s]) {
            p.insert(s, s);
        }
        p
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn contains(&self, s: Elem, t: Elem) -> bool {
        self.bits[s * self.size + t]
    }

    pub fn insert(&mut self, s: Elem, t: Elem) {
        self.bits[s * self.size + t] = true;
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        let n = self.size;
        (0..n * n).filter(|&i| self.bits[i]).map(move |i| (i / n, i % n))
    }

    /// Elements related to `s`.
    pub fn partners(&self, s: Elem) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size).filter(move |&t| self.contains(s, t))
    }

    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|(s, t)| self.contains(t, s))
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.size == other.size && self.iter().all(|(s, t)| other.contains(s, t))
    }

    pub fn to_vec(&self) -> Vec<(Elem, Elem)> {
        self.iter().collect()
    }
}

impl fmt::Debug for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Base classes with a pair engine (GR and AMT are recognised but unsupported).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseClass {
    #[serde(rename = "ST")]
    St,
    #[serde(rename = "DD")]
    Dd,
    #[serde(rename = "MOD")]
    Mod,
    #[serde(rename = "AT")]
    At,
    #[serde(rename = "GR")]
    Gr,
    #[serde(rename = "AMT")]
    Amt,
}

impl BaseClass {
    pub fn name(self) -> &'static str {
        match self {
            BaseClass::St => "ST",
            BaseClass::Dd => "DD",
            BaseClass::Mod => "MOD",
            BaseClass::At => "AT",
            BaseClass::Gr => "GR",
            BaseClass::Amt => "AMT",
        }
    }

    pub fn pairs(self, alpha: &Morphism) -> Result<PairSet> {
        match self {
            BaseClass::St => Ok(st_pairs(alpha)),
            BaseClass::Dd => Ok(dd_pairs(alpha)),
            BaseClass::Mod => mod_pairs(alpha),
            BaseClass::At => at_pairs(alpha),
            BaseClass::Gr | BaseClass::Amt => Err(Error::UnsupportedBase(self.name().into())),
        }
    }
}

impl FromStr for BaseClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "ST" => BaseClass::St,
            "DD" => BaseClass::Dd,
            "MOD" => BaseClass::Mod,
            "AT" => BaseClass::At,
            "GR" => BaseClass::Gr,
            "AMT" => BaseClass::Amt,
            other => return Err(Error::invalid(format!("unknown base class `{other}`"))),
        })
    }
}

/// ST = {∅, A*}: every pair of image elements.
pub fn st_pairs(alpha: &Morphism) -> PairSet {
    PairSet::square(&alpha.image())
}

/// DD = {∅, {ε}, A⁺, A*}, by exhausting the four candidate separators.
pub fn dd_pairs(alpha: &Morphism) -> PairSet {
    let image = alpha.image();
    let one = alpha.monoid().identity();
    let only_eps = !alpha.plus_image()[one];
    let eps_only = |s: Elem| s == one && only_eps;
    let has_eps = |s: Elem| s == one;
    let mut p = PairSet::empty(image.len());
    for s in (0..image.len()).filter(|&s| image[s]) {
        for t in (0..image.len()).filter(|&t| image[t]) {
            let sep_by_eps = eps_only(s) && !has_eps(t);
            let sep_by_plus = !has_eps(s) && eps_only(t);
            if !sep_by_eps && !sep_by_plus {
                p.insert(s, t);
            }
        }
    }
    p
}

/// V_B = {α(w) | content(w) = B}, indexed by the bitmask of B.
pub fn content_value_sets(alpha: &Morphism) -> Result<Vec<Vec<bool>>> {
    let k = alpha.alphabet().len();
    if k > 16 {
        return Err(Error::resource("content sets over more than 16 letters"));
    }
    let m = alpha.monoid();
    let mut v = vec![vec![false; m.size()]; 1 << k];
    v[0][m.identity()] = true;
    let mut stack = vec![(0usize, m.identity())];
    while let Some((b, x)) = stack.pop() {
        for a in 0..k {
            let b2 = b | (1 << a);
            let y = m.mul(x, alpha.letter_image(a));
            if !v[b2][y] {
                v[b2][y] = true;
                stack.push((b2, y));
            }
        }
    }
    Ok(v)
}

/// AT-pairs: ⋃_B V_B × V_B.
pub fn at_pairs(alpha: &Morphism) -> Result<PairSet> {
    let v = content_value_sets(alpha)?;
    let mut p = PairSet::empty(alpha.monoid().size());
    for row in &v {
        let elems: Vec<Elem> = (0..row.len()).filter(|&x| row[x]).collect();
        for &s in &elems {
            for &t in &elems {
                p.insert(s, t);
            }
        }
    }
    Ok(p)
}

/// The canonical content morphism A* → (2^A, ∪).
pub fn eta_at(alphabet: &crate::automata::Alphabet) -> Result<Morphism> {
    let k = alphabet.len();
    let monoid = Arc::new(Monoid::union_semilattice(k)?);
    Morphism::new(alphabet.clone(), monoid, (0..k).map(|a| 1 << a).collect())
}

/// η-pairs: {(α(u), α(v)) | η(u) ≤ η(v)}; `order` defaults to equality.
pub fn eta_pairs(
    alpha: &Morphism,
    eta: &Morphism,
    order: Option<&dyn Fn(Elem, Elem) -> bool>,
) -> Result<PairSet> {
    if alpha.alphabet() != eta.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let (ma, me) = (alpha.monoid(), eta.monoid());
    let mut seen = vec![false; ma.size() * me.size()];
    let start = (ma.identity(), me.identity());
    seen[start.0 * me.size() + start.1] = true;
    let mut stack = vec![start];
    let mut reached = Vec::new();
    while let Some((x, y)) = stack.pop() {
        reached.push((x, y));
        for a in 0..alpha.alphabet().len() {
            let nx = ma.mul(x, alpha.letter_image(a));
            let ny = me.mul(y, eta.letter_image(a));
            if !seen[nx * me.size() + ny] {
                seen[nx * me.size() + ny] = true;
                stack.push((nx, ny));
            }
        }
    }
    let mut p = PairSet::empty(ma.size());
    for &(s, n1) in &reached {
        for &(t, n2) in &reached {
            let le = match order {
                Some(f) => f(n1, n2),
                None => n1 == n2,
            };
            if le {
                p.insert(s, t);
            }
        }
    }
    Ok(p)
}

/// The sets X_n = {α(w) : |w| = n}, ultimately periodic in n.
#[derive(Clone, Debug)]
pub struct LengthProfile {
    pub threshold: usize,
    pub period: usize,
    /// X_0 … X_{threshold+period-1}.
    pub layers: Vec<Vec<bool>>,
}

impl LengthProfile {
    pub fn compute(alpha: &Morphism) -> Result<Self> {
        let m = alpha.monoid();
        let n = m.size();
        let guard: usize = if n >= 24 { usize::MAX } else { 1 << n };
        let mut first = vec![false; n];
        first[m.identity()] = true;
        let mut layers = vec![first.clone()];
        let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
        seen.insert(first, 0);
        loop {
            let cur = layers.last().unwrap();
            let mut next = vec![false; n];
            for x in (0..n).filter(|&x| cur[x]) {
                for &img in alpha.letter_images() {
                    next[m.mul(x, img)] = true;
                }
            }
            let idx = layers.len();
            if let Some(&j) = seen.get(&next) {
                return Ok(LengthProfile { threshold: j, period: idx - j, layers });
            }
            if idx > guard {
                return Err(Error::resource("length profile did not cycle"));
            }
            seen.insert(next.clone(), idx);
            layers.push(next);
        }
    }

    /// Is n ∈ Λ(x)?
    pub fn contains(&self, x: Elem, n: usize) -> bool {
        let i = if n < self.threshold {
            n
        } else {
            self.threshold + (n - self.threshold) % self.period
        };
        self.layers[i][x]
    }
}

/// MOD-pairs via the threshold/period closed form on the length sets.
pub fn mod_pairs(alpha: &Morphism) -> Result<PairSet> {
    let prof = LengthProfile::compute(alpha)?;
    let (t, p) = (prof.threshold, prof.period);
    let n = alpha.monoid().size();
    let lens: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..t + p).filter(|&i| prof.layers[i][x]).collect())
        .collect();
    let mut out = PairSet::empty(n);
    for s in 0..n {
        for u in 0..n {
            let hit = lens[s].iter().any(|&x| {
                lens[u].iter().any(|&y| x % p == y % p && (x == y || x >= t || y >= t))
            });
            if hit {
                out.insert(s, u);
            }
        }
    }
    Ok(out)
}
