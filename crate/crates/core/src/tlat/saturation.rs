use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rating::{IdemSemiring, Imprint, PointedImprint, Rating, RatingMap};
use crate::tlx::{tlx_imprint_with, tlx_lower, SemiringAlphabet, TlxBudget};

/// Which TLX bound drives the TL(AT)-operation rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Lower,
    Upper,
}

#[derive(Clone, Debug)]
pub struct SaturationOptions {
    pub mode: Mode,
    pub budget: TlxBudget,
    /// Order in which rows are visited; defaults to increasing bitmask.
    pub row_order: Option<Vec<usize>>,
    /// Run a TLX sweep before each multiplication closure instead of after.
    pub tlx_first: bool,
}

impl SaturationOptions {
    pub fn new(mode: Mode) -> Self {
        SaturationOptions { mode, budget: TlxBudget::default(), row_order: None, tlx_first: false }
    }
}

/// A subset of 2^A × R, one downset per content B (indexed by bitmask).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationState {
    pub mode: Mode,
    pub rows: Vec<Imprint>,
    /// Upper mode: whether every TLX call met its bounds exactly. Always true in
    /// lower mode, where it is not tracked.
    pub oracle_exact: bool,
    pub oracle_calls: usize,
}

impl SaturationState {
    pub fn row(&self, b: usize) -> &Imprint {
        &self.rows[b]
    }

    pub fn contains<S: IdemSemiring>(&self, s: &S, b: usize, r: Rating) -> bool {
        self.rows[b].contains(s, r)
    }

    pub fn pointed(&self) -> PointedImprint {
        PointedImprint { rows: self.rows.clone() }
    }

    /// Row union: Opt(A*, ρ).
    pub fn opt<S: IdemSemiring>(&self, s: &S) -> Imprint {
        self.pointed().pointed_union(s)
    }

    pub fn same_sets<S: IdemSemiring>(&self, s: &S, other: &SaturationState) -> bool {
        self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(s, b) && b.is_subset(s, a))
    }
}

/// Largest alphabet accepted (rows are indexed by subsets of A).
pub const SATURATION_MAX_LETTERS: usize = 12;

/// {(η_AT(w), ρ(w)) | w ∈ A*}.
pub fn trivial_elements<S: IdemSemiring>(rho: &RatingMap<S>) -> Result<Vec<(usize, Rating)>> {
    let s = rho.semiring();
    let k = rho.alphabet().len();
    let start = (0usize, s.one());
    let mut seen = HashSet::from([start]);
    let mut out = vec![start];
    let mut i = 0;
    while i < out.len() {
        let (b, r) = out[i];
        for a in 0..k {
            let next = (b | 1 << a, s.mul(r, rho.letter_rating(a)));
            if seen.insert(next) {
                if seen.len() > crate::rating::WORD_VALUE_LIMIT {
                    return Err(Error::resource("too many trivial elements"));
                }
                out.push(next);
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Oracle<'a, S> {
    semiring: &'a S,
    mode: Mode,
    budget: TlxBudget,
    cache: HashMap<Vec<Rating>, Imprint>,
    exact: bool,
    calls: usize,
}

impl<S: IdemSemiring> Oracle<'_, S> {
    fn opt(&mut self, q: &[Rating]) -> Imprint {
        if let Some(imp) = self.cache.get(q) {
            return imp.clone();
        }
        self.calls += 1;
        let alpha = SemiringAlphabet::new(self.semiring.clone(), q.iter().copied());
        let imp = match self.mode {
            Mode::Lower => tlx_lower(&alpha),
            Mode::Upper => {
                let b = tlx_imprint_with(&alpha, &self.budget);
                self.exact &= b.exact;
                b.upper
            }
        };
        self.cache.insert(q.to_vec(), imp.clone());
        imp
    }
}

fn check_alphabet<S: IdemSemiring>(rho: &RatingMap<S>) -> Result<usize> {
    let k = rho.alphabet().len();
    if k > SATURATION_MAX_LETTERS {
        return Err(Error::resource(format!(
            "saturation over {k} letters (limit {SATURATION_MAX_LETTERS})"
        )));
    }
    Ok(k)
}

pub fn saturate<S: IdemSemiring>(rho: &RatingMap<S>, mode: Mode) -> Result<SaturationState> {
    saturate_with(rho, &SaturationOptions::new(mode))
}

/// Least subset of 2^A × R containing the trivial elements and closed under
/// downset, (B₁, r₁), (B₂, r₂) ↦ (B₁ ∪ B₂, r₁r₂), and Opt_TLX(Q⁺, π) ⊆ S(B) for
/// Q = S(B) (taken through its maximal elements).
pub fn saturate_with<S: IdemSemiring>(
    rho: &RatingMap<S>,
    opts: &SaturationOptions,
) -> Result<SaturationState> {
    let k = check_alphabet(rho)?;
    let s = rho.semiring();
    let nrows = 1usize << k;
    let order: Vec<usize> = match &opts.row_order {
        Some(o) => {
            let mut sorted = o.clone();
            sorted.sort_unstable();
            if sorted != (0..nrows).collect::<Vec<_>>() {
                return Err(Error::invalid("row order must be a permutation of 2^A"));
            }
            o.clone()
        }
        None => (0..nrows).collect(),
    };
    // The upper fixpoint contains the lower one, so the upper run starts there and
    // its oracle is only consulted on the larger rows.
    let mut rows = if opts.mode == Mode::Upper {
        let lower = SaturationOptions { mode: Mode::Lower, ..opts.clone() };
        saturate_with(rho, &lower)?.rows
    } else {
        let mut rows = vec![Imprint::empty(); nrows];
        for (b, r) in trivial_elements(rho)? {
            rows[b].insert(s, r);
        }
        rows
    };
    let mut oracle = Oracle {
        semiring: s,
        mode: opts.mode,
        budget: opts.budget,
        cache: HashMap::new(),
        exact: true,
        calls: 0,
    };
    let mut first = true;
    loop {
        let skip_mul = first && opts.tlx_first;
        let mut changed = false;
        if !skip_mul {
            changed |= multiplication_closure(s, &mut rows, &order);
        }
        for &b in &order {
            if rows[b].is_empty() {
                continue;
            }
            let opt = oracle.opt(rows[b].generators());
            changed |= rows[b].union_with(s, &opt);
        }
        if !changed && !skip_mul {
            break;
        }
        first = false;
    }
    Ok(SaturationState { mode: opts.mode, rows, oracle_exact: oracle.exact, oracle_calls: oracle.calls })
}

fn multiplication_closure<S: IdemSemiring>(s: &S, rows: &mut [Imprint], order: &[usize]) -> bool {
    let mut grew = false;
    loop {
        let mut changed = false;
        for &b1 in order {
            for &b2 in order {
                if rows[b1].is_empty() || rows[b2].is_empty() {
                    continue;
                }
                let g1 = rows[b1].generators().to_vec();
                let g2 = rows[b2].generators().to_vec();
                let target = b1 | b2;
                for &x in &g1 {
                    for &y in &g2 {
                        changed |= rows[target].insert(s, s.mul(x, y));
                    }
                }
            }
        }
        if !changed {
            return grew;
        }
        grew = true;
    }
}

/// Which rule, if any, the state fails to be closed under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum AuditFailure {
    Trivial { content: usize, rating: Rating },
    Multiplication { left: usize, right: usize },
    Operation { content: usize },
}

/// Re-applies every rule to `state` (with the oracle of its mode) and reports the
/// first one that would add something.
pub fn audit_fixpoint<S: IdemSemiring>(
    rho: &RatingMap<S>,
    state: &SaturationState,
    budget: &TlxBudget,
) -> Result<Option<AuditFailure>> {
    check_alphabet(rho)?;
    let s = rho.semiring();
    let rows = &state.rows;
    for (b, r) in trivial_elements(rho)? {
        if !rows[b].contains(s, r) {
            return Ok(Some(AuditFailure::Trivial { content: b, rating: r }));
        }
    }
    for b1 in 0..rows.len() {
        for b2 in 0..rows.len() {
            let target = &rows[b1 | b2];
            for &x in rows[b1].generators() {
                for &y in rows[b2].generators() {
                    if !target.contains(s, s.mul(x, y)) {
                        return Ok(Some(AuditFailure::Multiplication { left: b1, right: b2 }));
                    }
                }
            }
        }
    }
    for (b, row) in rows.iter().enumerate() {
        if row.is_empty() {
            continue;
        }
        let q = SemiringAlphabet::new(s.clone(), row.generators().iter().copied());
        let opt = match state.mode {
            Mode::Lower => tlx_lower(&q),
            Mode::Upper => tlx_imprint_with(&q, budget).upper,
        };
        if !opt.is_subset(s, row) {
            return Ok(Some(AuditFailure::Operation { content: b }));
        }
    }
    Ok(None)
}
