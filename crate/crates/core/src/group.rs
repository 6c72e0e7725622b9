//! Finite groups given by full Cayley tables.
//!
//! Element orderings of the standard models:
//!
//! * `cyclic(n)`: index `k` is the `k`-th power of a generator.
//! * `symmetric(n)`: permutations of `0..n` in lexicographic order of their
//!   one-line notation `[σ(0), ..., σ(n-1)]`; the product is composition,
//!   `(στ)(x) = σ(τ(x))`. Index 0 is the identity.
//! * `direct_product(a, b)`: the pair `(i, j)` has index `i + a.order() * j`,
//!   so the first factor varies fastest. For `cyclic(2) x cyclic(2)` this
//!   reads `e, a, b, ab`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Groups up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;
/// Number of random triples checked above the exhaustive limit.
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 1 << 18;
/// Seed of the sampled associativity check.
pub const ASSOCIATIVITY_SEED: u64 = 0x5eed_0a55;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty Cayley table")]
    Empty,
    #[error("Cayley table row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("Cayley table entry ({row},{col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { row, len: r.len(), order: n });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::EntryOutOfRange { row, col, value });
            }
        }
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        let m = |a: usize, b: usize| flat[a * n + b];

        let assoc = |a: usize, b: usize, c: usize| m(m(a, b), c) == m(a, m(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                if !assoc(a, b, c) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| m(e, g) == g && m(g, e) == g))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| m(g, h) == identity && m(h, g) == identity)
                .ok_or(GroupError::NoInverse(g))?;
            inverses.push(inv);
        }
        Ok(FiniteGroup { order: n, table: flat, identity, inverses })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with index `k` the `k`-th power of a generator.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_cayley_table(&table).expect("cyclic table is a group")
    }

    /// `S_n` on lexicographically ordered permutations, product = composition.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=5).contains(&n), "symmetric groups are supported for 1 <= n <= 5");
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let comp: Vec<usize> = (0..n).map(|x| s[t[x]]).collect();
                        index(&comp)
                    })
                    .collect()
            })
            .collect();
        Self::from_cayley_table(&table).expect("symmetric table is a group")
    }

    /// `A x B` with `(i, j)` at index `i + |A| * j`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let table: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let (xi, xj) = (x % na, x / na);
                        let (yi, yj) = (y % na, y / na);
                        a.mul(xi, yi) + na * b.mul(xj, yj)
                    })
                    .collect()
            })
            .collect();
        Self::from_cayley_table(&table).expect("product of groups is a group")
    }

    /// The Klein four-group `Z/2 x Z/2`, ordered `e, a, b, ab`.
    pub fn klein() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Panics if either index is out of range.
    pub fn mul(&self, g: usize, h: usize) -> usize {
        assert!(g < self.order && h < self.order, "group element index out of range");
        self.table[g * self.order + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        assert!(g < self.order, "group element index out of range");
        self.inverses[g]
    }

    /// `g h g⁻¹`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn mul3(&self, a: usize, b: usize, c: usize) -> usize {
        self.mul(self.mul(a, b), c)
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn commute(&self, g: usize, h: usize) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    /// All ordered commuting pairs, lexicographically.
    pub fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for g in self.elements() {
            for h in self.elements() {
                if self.commute(g, h) {
                    out.push((g, h));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.commuting_pairs().len() == self.order * self.order
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
