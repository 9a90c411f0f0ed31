//! Two-sided bounds on Opt_TLX(Q⁺, π) where π rates the letter (q) as q.
//!
//! The lower bound closes the letters under downset, multiplication and an
//! element-level form of the Thérien–Wilke identity. The upper bound intersects
//! the imprints of concrete TLX-morphisms: finest LDA quotients of π × Θ_k,
//! where Θ_k remembers either the whole word (length ≤ 2k) or its k-prefix and
//! k-suffix, optionally with the letter content or with the orders of first and
//! last occurrences of letters.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{lcm, transition_monoid, Monoid, Morphism};
use crate::automata::{Alphabet, Dfa};
use crate::cpairs::dd_pairs;
use crate::error::{Error, Result};
use crate::membership::check_eq_tl;
use crate::rating::{IdemSemiring, Imprint, Rating, RatingMap};

/// A set Q ⊆ R used as an alphabet; letter i is (letters[i]).
#[derive(Clone, Debug)]
pub struct SemiringAlphabet<S> {
    semiring: S,
    letters: Vec<Rating>,
}

impl<S: IdemSemiring> SemiringAlphabet<S> {
    /// Duplicates are dropped; letters are kept sorted.
    pub fn new<I: IntoIterator<Item = Rating>>(semiring: S, letters: I) -> Self {
        let mut letters: Vec<Rating> = letters.into_iter().collect();
        letters.sort_unstable();
        letters.dedup();
        SemiringAlphabet { semiring, letters }
    }

    pub fn semiring(&self) -> &S {
        &self.semiring
    }

    pub fn letters(&self) -> &[Rating] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter names q0, q1, ...
    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new((0..self.letters.len()).map(|i| format!("q{i}")))
    }

    pub fn rate_word(&self, w: &[usize]) -> Rating {
        let s = &self.semiring;
        w.iter().fold(s.one(), |acc, &i| s.mul(acc, self.letters[i]))
    }

    pub fn rating_map(&self) -> Result<RatingMap<S>> {
        RatingMap::new(self.semiring.clone(), self.alphabet()?, self.letters.clone())
    }

    /// π(Q⁺) as a set of values, in discovery order.
    pub fn semigroup(&self, limit: usize) -> Result<Vec<Rating>> {
        let s = &self.semiring;
        let mut vals = self.letters.clone();
        let mut seen: std::collections::HashSet<Rating> = vals.iter().copied().collect();
        let mut i = 0;
        while i < vals.len() {
            for &q in &self.letters {
                let r = s.mul(vals[i], q);
                if seen.insert(r) {
                    if vals.len() >= limit {
                        return Err(Error::resource("semigroup generated by Q is too large"));
                    }
                    vals.push(r);
                }
            }
            i += 1;
        }
        Ok(vals)
    }
}

/// Lower and upper bounds on an optimal imprint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImprintBounds {
    pub lower: Imprint,
    pub upper: Imprint,
    pub exact: bool,
}

/// Search limits for the upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TlxBudget {
    /// Largest k for the Θ_k refinement.
    pub max_k: usize,
    /// Cap on |π × Θ_k (Q⁺)| and on quotient sizes.
    pub max_elements: usize,
    /// Also try every letter map into transformations of up to this many points.
    pub exhaustive_points: usize,
}

impl Default for TlxBudget {
    fn default() -> Self {
        TlxBudget { max_k: 2, max_elements: 20_000, exhaustive_points: 0 }
    }
}

/// TLX = TL(DD): the TL equation with DD-pairs.
pub fn is_tlx_morphism(eta: &Morphism) -> bool {
    check_eq_tl(eta.monoid(), &dd_pairs(eta))
}

/// An exponent n with r^n idempotent for every r ∈ π(Q⁺): lcm of the periods times
/// (largest index + 1).
pub fn stabilization_exponent<S: IdemSemiring>(q: &SemiringAlphabet<S>) -> Result<u64> {
    let mut period = 1u64;
    let mut index = 1u64;
    for r in q.semigroup(100_000)? {
        let (t, p) = q.semiring().index_period(r);
        period = lcm(period, p);
        index = index.max(t);
        if period > 1_000_000 {
            return Err(Error::resource("stabilization exponent too large"));
        }
    }
    Ok(period * (index + 1))
}

/// Closed form for Q = {q}.
pub fn single_letter_exact<S: IdemSemiring>(s: &S, q: Rating) -> Imprint {
    let (t, p) = s.index_period(q);
    let powers = (1..t + p).map(|n| s.pow(q, n));
    if p == 1 {
        return Imprint::downset(s, powers);
    }
    let tail = s.sum((0..p).map(|i| s.pow(q, t + i)));
    Imprint::downset(s, powers.chain([tail]))
}

fn mul_closure<S: IdemSemiring>(s: &S, imp: &mut Imprint) -> bool {
    let mut grew = false;
    loop {
        let g = imp.generators().to_vec();
        let mut changed = false;
        for &a in &g {
            for &b in &g {
                changed |= imp.insert(s, s.mul(a, b));
            }
        }
        if !changed {
            return grew;
        }
        grew = true;
    }
}

/// Σ_{n ≥ 0} h^n.
fn star<S: IdemSemiring>(s: &S, h: Rating) -> Rating {
    let mut acc = s.one();
    loop {
        let next = s.add(s.one(), s.mul(acc, h));
        if next == acc {
            return acc;
        }
        acc = next;
    }
}

/// Least downset containing Q and closed under products and under the rule:
/// for y and x₁..xₙ in the set, with e = y^ω, f = (ex₁e⋯exₙe)^ω and
/// h = ex₁e + ⋯ + exₙe, add f·h*·f. (In the local monoids of an LDA quotient,
/// (x₁⋯xₙ)^ω z (x₁⋯xₙ)^ω = (x₁⋯xₙ)^ω for every product z of the xᵢ.) The xᵢ
/// range over single generators, ordered pairs, and all generators at once.
pub fn tlx_lower<S: IdemSemiring>(q: &SemiringAlphabet<S>) -> Imprint {
    let s = q.semiring();
    let mut imp = Imprint::downset(s, q.letters().iter().copied());
    loop {
        mul_closure(s, &mut imp);
        let g = imp.generators().to_vec();
        let mut changed = false;
        for &y in &g {
            let e = s.omega(y);
            let local: Vec<Rating> = g.iter().map(|&x| s.mul(s.mul(e, x), e)).collect();
            let mut add = |xs: &[Rating]| {
                let f = s.omega(xs.iter().fold(s.one(), |acc, &x| s.mul(acc, x)));
                let h = s.sum(xs.iter().copied());
                imp.insert(s, s.mul(s.mul(f, star(s, h)), f))
            };
            for (i, &a) in local.iter().enumerate() {
                changed |= add(&[a]);
                for &b in &local[i + 1..] {
                    changed |= add(&[a, b]);
                    changed |= add(&[b, a]);
                }
            }
            if local.len() > 2 {
                changed |= add(&local);
            }
        }
        if !changed {
            return imp;
        }
    }
}

/// Word-level form of the lower bound: ratings of words up to `max_len`, and for
/// words z, u, v up to `max_len` the sums π(W₁) + π(W₂) with p = z^k,
/// W₁ = (pupvp)^k, W₂ = W₁·pvp·W₁; then closed under products.
pub fn tlx_lower_words<S: IdemSemiring>(q: &SemiringAlphabet<S>, max_len: usize, k: u64) -> Imprint {
    let s = q.semiring();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = words.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..q.len() {
                let mut x = w.clone();
                x.push(i);
                next.push(x);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let vals: Vec<Rating> = words[1..].iter().map(|w| q.rate_word(w)).collect();
    let mut imp = Imprint::downset(s, vals.iter().copied());
    for &z in &vals {
        let p = s.pow(z, k);
        for &u in &vals {
            for &v in &vals {
                let pvp = s.mul(s.mul(p, v), p);
                let w1 = s.pow(s.mul(s.mul(s.mul(p, u), p), s.mul(v, p)), k);
                let w2 = s.mul(s.mul(w1, pvp), w1);
                imp.insert(s, s.add(w1, w2));
            }
        }
    }
    mul_closure(s, &mut imp);
    imp
}

/// I_η = ↓{π(η⁻¹(x) ∩ Q⁺)} for a morphism η over the letters of Q.
pub fn imprint_of_morphism<S: IdemSemiring>(
    q: &SemiringAlphabet<S>,
    eta: &Morphism,
    limit: usize,
) -> Result<Imprint> {
    if eta.alphabet().len() != q.len() {
        return Err(Error::AlphabetMismatch);
    }
    let s = q.semiring();
    let m = eta.monoid();
    let mut seen: std::collections::HashSet<(usize, Rating)> = Default::default();
    let mut stack = Vec::new();
    for (i, &r) in q.letters().iter().enumerate() {
        if seen.insert((eta.letter_image(i), r)) {
            stack.push((eta.letter_image(i), r));
        }
    }
    let mut sums: Vec<Option<Rating>> = vec![None; m.size()];
    while let Some((x, r)) = stack.pop() {
        sums[x] = Some(sums[x].map_or(r, |acc| s.add(acc, r)));
        for (i, &l) in q.letters().iter().enumerate() {
            let next = (m.mul(x, eta.letter_image(i)), s.mul(r, l));
            if seen.insert(next) {
                if seen.len() > limit {
                    return Err(Error::resource("candidate morphism exploration too large"));
                }
                stack.push(next);
            }
        }
    }
    Ok(Imprint::downset(s, sums.into_iter().flatten()))
}

/// A TLX-morphism over the letters of Q with its imprint.
#[derive(Clone, Debug)]
pub struct TlxCandidate {
    pub morphism: Morphism,
    pub imprint: Imprint,
}

/// What Θ_k records besides the prefix and suffix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Plain,
    Content,
    /// Distinct letters in order of first occurrence, and of last occurrence.
    Order,
    /// As `Order`, for factors of length k + 1.
    FactorOrder,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Theta {
    content: u64,
    first: Vec<Vec<u16>>,
    last: Vec<Vec<u16>>,
    long: bool,
    pre: Vec<u16>,
    suf: Vec<u16>,
}

/// The lists concatenated, keeping only first occurrences.
fn merge_order(lists: [&[Vec<u16>]; 3]) -> Vec<Vec<u16>> {
    let mut out: Vec<Vec<u16>> = Vec::new();
    for f in lists.into_iter().flatten() {
        if !out.contains(f) {
            out.push(f.clone());
        }
    }
    out
}

/// Factors of length `flen` of xy that meet both x and y, left to right.
fn crossing_factors(flen: usize, x: &Theta, y: &Theta) -> Vec<Vec<u16>> {
    if flen < 2 {
        return Vec::new();
    }
    let tail = if x.long { &x.suf } else { &x.pre };
    let head = &y.pre;
    let l = tail.len();
    let joined: Vec<u16> = tail.iter().chain(head).copied().collect();
    (l.saturating_sub(flen - 1)..l)
        .filter(|&i| i + flen > l && i + flen <= joined.len())
        .map(|i| joined[i..i + flen].to_vec())
        .collect()
}

fn theta_mul(k: usize, flen: usize, x: &Theta, y: &Theta) -> Theta {
    let content = x.content | y.content;
    let (first, last) = if flen == 0 {
        (Vec::new(), Vec::new())
    } else {
        let mut cross = crossing_factors(flen, x, y);
        let first = merge_order([&x.first, &cross, &y.first]);
        cross.reverse();
        (first, merge_order([&y.last, &cross, &x.last]))
    };
    if !x.long && !y.long && x.pre.len() + y.pre.len() <= 2 * k {
        let mut w = x.pre.clone();
        w.extend_from_slice(&y.pre);
        return Theta { content, first, last, long: false, pre: w, suf: Vec::new() };
    }
    let left: Vec<u16> = if x.long {
        x.pre.clone()
    } else {
        x.pre.iter().chain(&y.pre).take(k).copied().collect()
    };
    let right: Vec<u16> = if y.long {
        y.suf.clone()
    } else {
        let xs = if x.long { &x.suf } else { &x.pre };
        let joined: Vec<u16> = xs.iter().chain(&y.pre).copied().collect();
        joined[joined.len() - k.min(joined.len())..].to_vec()
    };
    Theta { content, first, last, long: true, pre: left, suf: right }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut y = x;
        while self.parent[y as usize] != r {
            let next = self.parent[y as usize];
            self.parent[y as usize] = r;
            y = next;
        }
        r
    }
}

/// The semigroup (π × Θ_k)(Q⁺) with its letter actions.
struct Reflection {
    k: usize,
    /// Length of the factors whose occurrence order is tracked, 0 for none.
    flen: usize,
    thetas: Vec<Theta>,
    theta_index: HashMap<Theta, u32>,
    elems: Vec<(Rating, u32)>,
    index: HashMap<(Rating, u32), u32>,
    right: Vec<u32>,
    left: Vec<u32>,
    letters: Vec<u32>,
}

impl Reflection {
    fn build<S: IdemSemiring>(
        q: &SemiringAlphabet<S>,
        k: usize,
        shape: Shape,
        limit: usize,
    ) -> Result<Self> {
        if q.len() > 64 {
            return Err(Error::resource("more than 64 rating letters"));
        }
        let n = q.len();
        let flen = match shape {
            Shape::Plain | Shape::Content => 0,
            Shape::Order => 1,
            Shape::FactorOrder => k + 1,
        };
        let mut r = Reflection {
            k,
            flen,
            thetas: Vec::new(),
            theta_index: HashMap::new(),
            elems: Vec::new(),
            index: HashMap::new(),
            right: Vec::new(),
            left: Vec::new(),
            letters: Vec::new(),
        };
        let s = q.semiring();
        for (i, &l) in q.letters().iter().enumerate() {
            let content = if shape == Shape::Content { 1 << i } else { 0 };
            let order = if flen == 1 { vec![vec![i as u16]] } else { vec![] };
            let (long, pre) = if k == 0 { (true, vec![]) } else { (false, vec![i as u16]) };
            let th = Theta { content, first: order.clone(), last: order, long, pre, suf: vec![] };
            let t = r.intern_theta(th);
            let id = r.intern(l, t, limit)?;
            r.letters.push(id);
        }
        let mut i = 0;
        while i < r.elems.len() {
            for a in 0..n {
                let id = r.mul(s, i as u32, r.letters[a], limit)?;
                r.right.push(id);
            }
            i += 1;
        }
        for p in 0..r.elems.len() {
            for a in 0..n {
                let id = r.mul(s, r.letters[a], p as u32, limit)?;
                r.left.push(id);
            }
        }
        debug_assert_eq!(r.left.len(), r.right.len());
        Ok(r)
    }

    fn intern_theta(&mut self, th: Theta) -> u32 {
        if let Some(&id) = self.theta_index.get(&th) {
            return id;
        }
        let id = self.thetas.len() as u32;
        self.thetas.push(th.clone());
        self.theta_index.insert(th, id);
        id
    }

    fn intern(&mut self, r: Rating, t: u32, limit: usize) -> Result<u32> {
        if let Some(&id) = self.index.get(&(r, t)) {
            return Ok(id);
        }
        if self.elems.len() >= limit {
            return Err(Error::resource(format!("reflection semigroup exceeds {limit} elements")));
        }
        let id = self.elems.len() as u32;
        self.elems.push((r, t));
        self.index.insert((r, t), id);
        Ok(id)
    }

    fn mul<S: IdemSemiring>(&mut self, s: &S, x: u32, y: u32, limit: usize) -> Result<u32> {
        let (rx, tx) = self.elems[x as usize];
        let (ry, ty) = self.elems[y as usize];
        let th = theta_mul(self.k, self.flen, &self.thetas[tx as usize], &self.thetas[ty as usize]);
        let t = self.intern_theta(th);
        self.intern(s.mul(rx, ry), t, limit)
    }

    fn lookup<S: IdemSemiring>(&self, s: &S, x: u32, y: u32) -> u32 {
        let (rx, tx) = self.elems[x as usize];
        let (ry, ty) = self.elems[y as usize];
        let th = theta_mul(self.k, self.flen, &self.thetas[tx as usize], &self.thetas[ty as usize]);
        let t = self.theta_index[&th];
        self.index[&(s.mul(rx, ry), t)]
    }

    fn union(&self, uf: &mut UnionFind, a: u32, b: u32, nletters: usize) {
        let mut work = vec![(a, b)];
        while let Some((x, y)) = work.pop() {
            let (rx, ry) = (uf.find(x), uf.find(y));
            if rx == ry {
                continue;
            }
            uf.parent[rx.max(ry) as usize] = rx.min(ry);
            for l in 0..nletters {
                let (xi, yi) = (x as usize * nletters + l, y as usize * nletters + l);
                work.push((self.right[xi], self.right[yi]));
                work.push((self.left[xi], self.left[yi]));
            }
        }
    }
}

/// Finest quotient of (π × Θ_k)(Q⁺) satisfying the Thérien–Wilke identity, as a
/// morphism onto the quotient with an identity adjoined.
pub fn reflection_candidate<S: IdemSemiring>(
    q: &SemiringAlphabet<S>,
    k: usize,
    shape: Shape,
    limit: usize,
) -> Result<TlxCandidate> {
    if q.is_empty() {
        return Err(Error::invalid("empty rating alphabet"));
    }
    let s = q.semiring();
    let refl = Reflection::build(q, k, shape, limit)?;
    let n = refl.elems.len();
    let nl = q.len();
    let mut uf = UnionFind { parent: (0..n as u32).collect() };
    loop {
        let mut class = vec![u32::MAX; n];
        let mut reps: Vec<u32> = Vec::new();
        for p in 0..n as u32 {
            let root = uf.find(p) as usize;
            if class[root] == u32::MAX {
                class[root] = reps.len() as u32;
                reps.push(p);
            }
            class[p as usize] = class[root];
        }
        let m = reps.len();
        if m * m > limit.saturating_mul(64) {
            return Err(Error::resource("reflection quotient too large"));
        }
        let mut table = vec![0u32; m * m];
        for c in 0..m {
            for d in 0..m {
                table[c * m + d] = class[refl.lookup(s, reps[c], reps[d]) as usize];
            }
        }
        let mt = |x: u32, y: u32| table[x as usize * m + y as usize];
        let omega: Vec<u32> = (0..m as u32)
            .map(|x| {
                let mut powers = vec![x];
                loop {
                    let next = mt(*powers.last().unwrap(), x);
                    if let Some(j) = powers.iter().position(|&p| p == next) {
                        let period = powers.len() - j;
                        let exp = (j + 1).div_ceil(period) * period;
                        return powers[exp - 1];
                    }
                    powers.push(next);
                }
            })
            .collect();
        let mut violations = Vec::new();
        for e in (0..m as u32).filter(|&e| mt(e, e) == e) {
            let mut local: Vec<u32> = (0..m as u32).map(|x| mt(mt(e, x), e)).collect();
            local.sort_unstable();
            local.dedup();
            for &x in &local {
                for &y in &local {
                    let f = omega[mt(x, y) as usize];
                    for z in [y, x] {
                        let g = mt(mt(f, z), f);
                        if g != f {
                            violations.push((reps[f as usize], reps[g as usize]));
                        }
                    }
                }
            }
        }
        if violations.is_empty() {
            let mut sums: Vec<Option<Rating>> = vec![None; m];
            for p in 0..n {
                let c = class[p] as usize;
                let r = refl.elems[p].0;
                sums[c] = Some(sums[c].map_or(r, |acc| s.add(acc, r)));
            }
            let imprint = Imprint::downset(s, sums.into_iter().flatten());
            let size = m + 1;
            let mut mult = vec![0u32; size * size];
            for x in 0..size {
                mult[x] = x as u32;
                mult[x * size] = x as u32;
            }
            for c in 0..m {
                for d in 0..m {
                    mult[(c + 1) * size + d + 1] = table[c * m + d] + 1;
                }
            }
            let monoid = Arc::new(Monoid::from_trusted(size, 0, mult));
            let letters = refl.letters.iter().map(|&p| class[p as usize] as usize + 1).collect();
            let morphism = Morphism::new(q.alphabet()?, monoid, letters)?;
            return Ok(TlxCandidate { morphism, imprint });
        }
        for (a, b) in violations {
            refl.union(&mut uf, a, b, nl);
        }
    }
}

/// ↓{Σ π(Q⁺)}: the imprint of the one-element morphism.
pub fn trivial_upper<S: IdemSemiring>(q: &SemiringAlphabet<S>) -> Imprint {
    let s = q.semiring();
    if q.is_empty() {
        return Imprint::empty();
    }
    let letters = s.sum(q.letters().iter().copied());
    let mut acc = letters;
    loop {
        let next = s.add(acc, s.mul(acc, letters));
        if next == acc {
            return Imprint::principal(acc);
        }
        acc = next;
    }
}

fn exhaustive_candidates<S: IdemSemiring>(
    q: &SemiringAlphabet<S>,
    points: usize,
    limit: usize,
) -> Result<Imprint> {
    let al = q.alphabet()?;
    let mut upper = trivial_upper(q);
    for n in 1..=points {
        let maps = n.pow(n as u32);
        let total = (maps as u64).checked_pow(q.len() as u32).unwrap_or(u64::MAX);
        if total > 200_000 {
            return Err(Error::resource("exhaustive candidate search too large"));
        }
        for code in 0..total {
            let mut c = code;
            let mut images = Vec::with_capacity(q.len());
            for _ in 0..q.len() {
                let mut f = c as usize % maps;
                c /= maps as u64;
                let mut map = vec![0usize; n];
                for slot in map.iter_mut() {
                    *slot = f % n;
                    f /= n;
                }
                images.push(map);
            }
            let d = Dfa::from_fn(&al, n, 0, |st, a| images[a][st], |_| false)?;
            let eta = transition_monoid(&d)?;
            if is_tlx_morphism(&eta) {
                let imp = imprint_of_morphism(q, &eta, limit)?;
                upper = upper.intersect(q.semiring(), &imp);
            }
        }
    }
    Ok(upper)
}

/// Intersection of the imprints of every candidate TLX-morphism the budget allows.
pub fn tlx_upper<S: IdemSemiring>(q: &SemiringAlphabet<S>, budget: &TlxBudget) -> Imprint {
    upper_until(q, budget, None)
}

fn upper_until<S: IdemSemiring>(
    q: &SemiringAlphabet<S>,
    budget: &TlxBudget,
    target: Option<&Imprint>,
) -> Imprint {
    let s = q.semiring();
    let mut upper = trivial_upper(q);
    if q.is_empty() {
        return upper;
    }
    let done = |u: &Imprint| target.is_some_and(|t| u.is_subset(s, t));
    for k in 0..=budget.max_k {
        for shape in [Shape::Plain, Shape::Content, Shape::Order, Shape::FactorOrder] {
            if done(&upper) {
                return upper;
            }
            // too large at this budget: other candidates may still fit
            if let Ok(c) = reflection_candidate(q, k, shape, budget.max_elements) {
                upper = upper.intersect(s, &c.imprint);
            }
        }
    }
    if budget.exhaustive_points > 0 && !done(&upper) {
        if let Ok(imp) = exhaustive_candidates(q, budget.exhaustive_points, budget.max_elements) {
            upper = upper.intersect(s, &imp);
        }
    }
    upper
}

pub fn tlx_imprint<S: IdemSemiring>(q: &SemiringAlphabet<S>) -> ImprintBounds {
    tlx_imprint_with(q, &TlxBudget::default())
}

/// Lower bound, then upper candidates with growing k until the two meet.
pub fn tlx_imprint_with<S: IdemSemiring>(q: &SemiringAlphabet<S>, budget: &TlxBudget) -> ImprintBounds {
    let s = q.semiring();
    let lower = tlx_lower(q);
    let upper = upper_until(q, budget, Some(&lower));
    assert!(lower.is_subset(s, &upper), "TLX lower bound exceeds upper bound");
    let exact = upper.is_subset(s, &lower);
    ImprintBounds { lower, upper, exact }
}
