use crate::error::{Error, Result};

/// Cap on the ω exponent before giving up.
pub const OMEGA_CAP: u64 = 1_000_000;

pub type Elem = usize;

/// Finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monoid {
    size: usize,
    identity: Elem,
    mult: Vec<u32>,
}

impl Monoid {
    /// Validates associativity and the identity laws.
    pub fn new(table: Vec<Vec<Elem>>, identity: Elem) -> Result<Monoid> {
        let size = table.len();
        if size == 0 || identity >= size {
            return Err(Error::invalid("monoid needs an identity element"));
        }
        let mut mult = Vec::with_capacity(size * size);
        for row in &table {
            if row.len() != size || row.iter().any(|&x| x >= size) {
                return Err(Error::invalid("malformed multiplication table"));
            }
            mult.extend(row.iter().map(|&x| x as u32));
        }
        let m = Monoid { size, identity, mult };
        for x in 0..size {
            if m.mul(identity, x) != x || m.mul(x, identity) != x {
                return Err(Error::invalid(format!("identity law fails at {x}")));
            }
        }
        for x in 0..size {
            for y in 0..size {
                let xy = m.mul(x, y);
                for z in 0..size {
                    if m.mul(xy, z) != m.mul(x, m.mul(y, z)) {
                        return Err(Error::invalid(format!("not associative at ({x},{y},{z})")));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Table already known to be a monoid (e.g. built from transformations).
    pub(crate) fn from_trusted(size: usize, identity: Elem, mult: Vec<u32>) -> Monoid {
        debug_assert_eq!(mult.len(), size * size);
        Monoid { size, identity, mult }
    }

    pub fn trivial() -> Monoid {
        Monoid { size: 1, identity: 0, mult: vec![0] }
    }

    /// ℤ/n with 0 as identity.
    pub fn cyclic_group(n: usize) -> Monoid {
        let mut mult = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                mult.push(((x + y) % n) as u32);
            }
        }
        Monoid { size: n, identity: 0, mult }
    }

    /// Subsets of an `n`-element set under union, elements encoded as bitmasks.
    pub fn union_semilattice(n: usize) -> Result<Monoid> {
        if n > 12 {
            return Err(Error::resource("union semilattice over more than 12 generators"));
        }
        let size = 1usize << n;
        let mut mult = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                mult.push((x | y) as u32);
            }
        }
        Ok(Monoid { size, identity: 0, mult })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mult[x * self.size + y] as Elem
    }

    pub fn product<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn table(&self) -> Vec<Vec<Elem>> {
        (0..self.size).map(|x| (0..self.size).map(|y| self.mul(x, y)).collect()).collect()
    }

    pub fn pow(&self, s: Elem, n: u64) -> Elem {
        let mut result = self.identity;
        let mut base = s;
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

    pub fn is_idempotent(&self, e: Elem) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        (0..self.size).filter(|&e| self.is_idempotent(e)).collect()
    }

    /// Index and period of the powers s, s², …: s^(i+p) = s^i with i ≥ 1 minimal.
    pub fn index_period(&self, s: Elem) -> (u64, u64) {
        let mut seen = vec![0u64; self.size];
        let mut x = s;
        let mut k = 1u64;
        loop {
            if seen[x] != 0 {
                return (seen[x], k - seen[x]);
            }
            seen[x] = k;
            x = self.mul(x, s);
            k += 1;
        }
    }

    /// Least k ≥ 1 such that s^k is idempotent for every s.
    pub fn omega_exponent(&self) -> Result<u64> {
        let mut l = 1u64;
        let mut max_index = 1u64;
        for s in 0..self.size {
            let (i, p) = self.index_period(s);
            max_index = max_index.max(i);
            l = lcm(l, p);
            if l > OMEGA_CAP {
                return Err(Error::resource("omega exponent exceeds 10^6"));
            }
        }
        let k = max_index.div_ceil(l) * l;
        if k > OMEGA_CAP {
            return Err(Error::resource("omega exponent exceeds 10^6"));
        }
        Ok(k)
    }

    /// The unique idempotent power of `s`.
    pub fn omega_power(&self, s: Elem) -> Elem {
        let (i, p) = self.index_period(s);
        let k = i.div_ceil(p) * p;
        self.pow(s, k)
    }

    /// s^(ω+1).
    pub fn omega_plus_one(&self, s: Elem) -> Elem {
        self.mul(self.omega_power(s), s)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_omega() {
        let z2 = Monoid::cyclic_group(2);
        assert_eq!(z2.omega_exponent().unwrap(), 2);
        assert_eq!(z2.omega_power(1), 0);
        assert_eq!(z2.idempotents(), vec![0]);
    }

    #[test]
    fn trivial_omega_is_one() {
        assert_eq!(Monoid::trivial().omega_exponent().unwrap(), 1);
    }

    #[test]
    fn rejects_non_associative() {
        // x·y = y-x mod 3 style table without identity fails early
        let t = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 1, 2]];
        assert!(Monoid::new(t, 0).is_err());
        assert!(Monoid::new(vec![vec![0, 1], vec![1, 0]], 0).is_ok());
    }

    #[test]
    fn omega_exponent_accounts_for_index() {
        // {1, a, a²=a³}: a has index 2, period 1
        let t = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]];
        let m = Monoid::new(t, 0).unwrap();
        assert_eq!(m.omega_exponent().unwrap(), 2);
        assert_eq!(m.omega_power(1), 2);
    }
}
