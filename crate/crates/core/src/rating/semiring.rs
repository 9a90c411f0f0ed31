use std::fmt::Debug;
use std::sync::Arc;

use crate::algebra::Monoid;
use crate::error::{Error, Result};

/// Semiring elements; interpretation depends on the semiring.
pub type Rating = u64;

/// A finite idempotent semiring. The order is r ≤ s ⇔ r + s = s.
pub trait IdemSemiring: Clone + Debug + Send + Sync {
    fn zero(&self) -> Rating;
    fn one(&self) -> Rating;
    fn add(&self, a: Rating, b: Rating) -> Rating;
    fn mul(&self, a: Rating, b: Rating) -> Rating;

    fn leq(&self, a: Rating, b: Rating) -> bool {
        self.add(a, b) == b
    }

    /// Every element, when the carrier is small enough to list.
    fn elements(&self) -> Option<Vec<Rating>>;

    /// Generators of ↓a ∩ ↓b (its maximal elements).
    fn meet_generators(&self, a: Rating, b: Rating) -> Vec<Rating> {
        let elems = self.elements().expect("meet needs an enumerable semiring");
        let lower: Vec<Rating> =
            elems.into_iter().filter(|&r| self.leq(r, a) && self.leq(r, b)).collect();
        lower
            .iter()
            .copied()
            .filter(|&r| !lower.iter().any(|&s| s != r && self.leq(r, s)))
            .collect()
    }

    fn sum<I: IntoIterator<Item = Rating>>(&self, it: I) -> Rating {
        it.into_iter().fold(self.zero(), |acc, r| self.add(acc, r))
    }

    fn pow(&self, r: Rating, n: u64) -> Rating {
        let mut result = self.one();
        let mut base = r;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        result
    }

    /// Index t ≥ 1 and period p of r, r², …: r^(t+p) = r^t.
    fn index_period(&self, r: Rating) -> (u64, u64) {
        let mut seen: std::collections::HashMap<Rating, u64> = Default::default();
        let mut x = r;
        let mut k = 1u64;
        loop {
            if let Some(&j) = seen.get(&x) {
                return (j, k - j);
            }
            seen.insert(x, k);
            x = self.mul(x, r);
            k += 1;
        }
    }

    /// The idempotent power of r.
    fn omega(&self, r: Rating) -> Rating {
        let (t, p) = self.index_period(r);
        self.pow(r, t.div_ceil(p) * p)
    }

    fn describe(&self, r: Rating) -> String {
        r.to_string()
    }
}

/// Semiring given by explicit tables over 0..size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSemiring {
    size: usize,
    add: Arc<[u32]>,
    mul: Arc<[u32]>,
    zero: Rating,
    one: Rating,
}

impl TableSemiring {
    /// Checks every idempotent-semiring axiom.
    pub fn new(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, zero: usize, one: usize) -> Result<Self> {
        let n = add.len();
        let bad = |m: &str| Err(Error::invalid(format!("semiring: {m}")));
        if n == 0 || mul.len() != n || zero >= n || one >= n {
            return bad("malformed tables");
        }
        let flat = |t: &Vec<Vec<usize>>| -> Option<Vec<u32>> {
            let mut v = Vec::with_capacity(n * n);
            for row in t {
                if row.len() != n || row.iter().any(|&x| x >= n) {
                    return None;
                }
                v.extend(row.iter().map(|&x| x as u32));
            }
            Some(v)
        };
        let (Some(a), Some(m)) = (flat(&add), flat(&mul)) else {
            return bad("malformed tables");
        };
        let s = TableSemiring { size: n, add: a.into(), mul: m.into(), zero: zero as Rating, one: one as Rating };
        let r = |x: usize| x as Rating;
        for x in 0..n {
            if s.add(r(x), r(x)) != r(x) {
                return bad("addition is not idempotent");
            }
            if s.add(r(x), s.zero) != r(x) {
                return bad("zero is not an additive identity");
            }
            if s.mul(r(x), s.one) != r(x) || s.mul(s.one, r(x)) != r(x) {
                return bad("one is not a multiplicative identity");
            }
            if s.mul(r(x), s.zero) != s.zero || s.mul(s.zero, r(x)) != s.zero {
                return bad("zero is not absorbing");
            }
            for y in 0..n {
                if s.add(r(x), r(y)) != s.add(r(y), r(x)) {
                    return bad("addition is not commutative");
                }
                for z in 0..n {
                    let (x, y, z) = (r(x), r(y), r(z));
                    if s.add(s.add(x, y), z) != s.add(x, s.add(y, z)) {
                        return bad("addition is not associative");
                    }
                    if s.mul(s.mul(x, y), z) != s.mul(x, s.mul(y, z)) {
                        return bad("multiplication is not associative");
                    }
                    if s.mul(x, s.add(y, z)) != s.add(s.mul(x, y), s.mul(x, z))
                        || s.mul(s.add(y, z), x) != s.add(s.mul(y, x), s.mul(z, x))
                    {
                        return bad("multiplication does not distribute over addition");
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.add[x * self.size + y] as usize).collect())
            .collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.mul[x * self.size + y] as usize).collect())
            .collect()
    }
}

impl IdemSemiring for TableSemiring {
    fn zero(&self) -> Rating {
        self.zero
    }

    fn one(&self) -> Rating {
        self.one
    }

    #[inline]
    fn add(&self, a: Rating, b: Rating) -> Rating {
        self.add[a as usize * self.size + b as usize] as Rating
    }

    #[inline]
    fn mul(&self, a: Rating, b: Rating) -> Rating {
        self.mul[a as usize * self.size + b as usize] as Rating
    }

    fn elements(&self) -> Option<Vec<Rating>> {
        Some((0..self.size as Rating).collect())
    }
}

/// Maximum monoid size for the powerset semiring (elements are 64-bit masks).
pub const POWERSET_MAX: usize = 64;

/// (2^M, ∪, ·) with subsets of M encoded as bitmasks.
#[derive(Clone, Debug)]
pub struct PowersetSemiring {
    monoid: Arc<Monoid>,
    /// chunk[(i * 8 + c) * 256 + byte]: image of byte `byte` of chunk `c` under left
    /// multiplication by element i.
    chunk: Arc<[u64]>,
}

impl PartialEq for PowersetSemiring {
    fn eq(&self, other: &Self) -> bool {
        self.monoid == other.monoid
    }
}

impl Eq for PowersetSemiring {}

impl PowersetSemiring {
    pub fn new(monoid: Arc<Monoid>) -> Result<Self> {
        let n = monoid.size();
        if n > POWERSET_MAX {
            return Err(Error::resource(format!(
                "powerset semiring over a monoid of size {n} (limit {POWERSET_MAX})"
            )));
        }
        let mut chunk = vec![0u64; n * 8 * 256];
        for i in 0..n {
            for c in 0..8 {
                for byte in 0..256usize {
                    let mut out = 0u64;
                    for bit in 0..8 {
                        let j = c * 8 + bit;
                        if byte >> bit & 1 == 1 && j < n {
                            out |= 1 << monoid.mul(i, j);
                        }
                    }
                    chunk[(i * 8 + c) * 256 + byte] = out;
                }
            }
        }
        Ok(PowersetSemiring { monoid, chunk: chunk.into() })
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn singleton(x: usize) -> Rating {
        1 << x
    }

    pub fn members(r: Rating) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| r >> i & 1 == 1)
    }
}

impl IdemSemiring for PowersetSemiring {
    fn zero(&self) -> Rating {
        0
    }

    fn one(&self) -> Rating {
        1 << self.monoid.identity()
    }

    #[inline]
    fn add(&self, a: Rating, b: Rating) -> Rating {
        a | b
    }

    fn mul(&self, a: Rating, b: Rating) -> Rating {
        let mut out = 0;
        let mut rest = a;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let base = i * 8 * 256;
            let mut bb = b;
            let mut c = 0;
            while bb != 0 {
                let byte = (bb & 0xff) as usize;
                if byte != 0 {
                    out |= self.chunk[base + c * 256 + byte];
                }
                bb >>= 8;
                c += 1;
            }
        }
        out
    }

    #[inline]
    fn leq(&self, a: Rating, b: Rating) -> bool {
        a & !b == 0
    }

    fn elements(&self) -> Option<Vec<Rating>> {
        let n = self.monoid.size();
        (n <= 20).then(|| (0..1u64 << n).collect())
    }

    fn meet_generators(&self, a: Rating, b: Rating) -> Vec<Rating> {
        vec![a & b]
    }

    fn describe(&self, r: Rating) -> String {
        let items: Vec<String> = Self::members(r).map(|i| i.to_string()).collect();
        format!("{{{}}}", items.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean() -> TableSemiring {
        TableSemiring::new(vec![vec![0, 1], vec![1, 1]], vec![vec![0, 0], vec![0, 1]], 0, 1)
            .unwrap()
    }

    #[test]
    fn boolean_semiring_validates() {
        let b = boolean();
        assert!(b.leq(0, 1) && !b.leq(1, 0));
        assert_eq!(b.meet_generators(0, 1), vec![0]);
    }

    #[test]
    fn rejects_non_absorbing_zero() {
        let r = TableSemiring::new(vec![vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![1, 1]], 0, 1);
        assert!(r.is_err());
        let r = TableSemiring::new(vec![vec![0, 1], vec![1, 0]], vec![vec![0, 0], vec![0, 1]], 0, 1);
        assert!(r.is_err());
    }

    #[test]
    fn powerset_over_z2() {
        let p = PowersetSemiring::new(Arc::new(Monoid::cyclic_group(2))).unwrap();
        let (one, g) = (0b01, 0b10);
        assert_eq!(p.one(), one);
        assert_eq!(p.mul(g, g), one);
        assert_eq!(p.mul(0b11, g), 0b11);
        assert_eq!(p.mul(0, 0b11), 0);
        assert_eq!(p.elements().unwrap().len(), 4);
        assert_eq!(p.omega(g), one);
        assert_eq!(p.index_period(g), (1, 2));
    }
}
