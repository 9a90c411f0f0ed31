use serde::Serialize;

use super::semiring::{IdemSemiring, Rating};

/// A downward-closed subset of a semiring, stored as its antichain of maximal
/// elements (sorted, so equal downsets compare equal).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Imprint {
    gens: Vec<Rating>,
}

impl Imprint {
    pub fn empty() -> Self {
        Imprint { gens: Vec::new() }
    }

    pub fn principal(r: Rating) -> Self {
        Imprint { gens: vec![r] }
    }

    /// ↓ of the given elements.
    pub fn downset<S: IdemSemiring, I: IntoIterator<Item = Rating>>(s: &S, it: I) -> Self {
        let mut out = Imprint::empty();
        for r in it {
            out.insert(s, r);
        }
        out
    }

    pub fn generators(&self) -> &[Rating] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains<S: IdemSemiring>(&self, s: &S, r: Rating) -> bool {
        self.gens.iter().any(|&g| s.leq(r, g))
    }

    /// Adds ↓r; returns whether the downset grew.
    pub fn insert<S: IdemSemiring>(&mut self, s: &S, r: Rating) -> bool {
        if self.contains(s, r) {
            return false;
        }
        self.gens.retain(|&g| !s.leq(g, r));
        let pos = self.gens.binary_search(&r).unwrap_or_else(|p| p);
        self.gens.insert(pos, r);
        true
    }

    pub fn union_with<S: IdemSemiring>(&mut self, s: &S, other: &Imprint) -> bool {
        let mut changed = false;
        for &r in &other.gens {
            changed |= self.insert(s, r);
        }
        changed
    }

    pub fn is_subset<S: IdemSemiring>(&self, s: &S, other: &Imprint) -> bool {
        self.gens.iter().all(|&r| other.contains(s, r))
    }

    pub fn intersect<S: IdemSemiring>(&self, s: &S, other: &Imprint) -> Imprint {
        let mut out = Imprint::empty();
        for &a in &self.gens {
            for &b in &other.gens {
                for m in s.meet_generators(a, b) {
                    out.insert(s, m);
                }
            }
        }
        out
    }

    /// All members, when the semiring is enumerable.
    pub fn elements<S: IdemSemiring>(&self, s: &S) -> Option<Vec<Rating>> {
        Some(s.elements()?.into_iter().filter(|&r| self.contains(s, r)).collect())
    }
}

/// Imprints indexed by the elements of a pointing monoid (here 2^A, by bitmask).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedImprint {
    pub rows: Vec<Imprint>,
}

impl PointedImprint {
    /// Row union.
    pub fn pointed_union<S: IdemSemiring>(&self, s: &S) -> Imprint {
        let mut out = Imprint::empty();
        for row in &self.rows {
            out.union_with(s, row);
        }
        out
    }
}

pub fn pointed_union<S: IdemSemiring>(s: &S, p: &PointedImprint) -> Imprint {
    p.pointed_union(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monoid;
    use crate::rating::PowersetSemiring;
    use std::sync::Arc;

    #[test]
    fn antichain_is_canonical() {
        let p = PowersetSemiring::new(Arc::new(Monoid::cyclic_group(2))).unwrap();
        let a = Imprint::downset(&p, [0b01, 0b10, 0b00]);
        let b = Imprint::downset(&p, [0b10, 0b01]);
        assert_eq!(a, b);
        assert_eq!(a.elements(&p).unwrap(), vec![0b00, 0b01, 0b10]);
        let mut c = a.clone();
        assert!(c.insert(&p, 0b11));
        assert_eq!(c.generators(), &[0b11]);
        assert!(a.is_subset(&p, &c));
        assert_eq!(c.intersect(&p, &Imprint::principal(0b10)), Imprint::principal(0b10));
    }

    #[test]
    fn row_union() {
        let p = PowersetSemiring::new(Arc::new(Monoid::cyclic_group(2))).unwrap();
        let pi = PointedImprint {
            rows: vec![Imprint::principal(0b01), Imprint::empty(), Imprint::principal(0b10)],
        };
        assert_eq!(pointed_union(&p, &pi), Imprint::downset(&p, [0b01, 0b10]));
        let single = PointedImprint { rows: vec![Imprint::principal(0b11)] };
        assert_eq!(pointed_union(&p, &single), Imprint::principal(0b11));
        let none = PointedImprint { rows: vec![Imprint::empty()] };
        assert!(pointed_union(&p, &none).is_empty());
    }
}
