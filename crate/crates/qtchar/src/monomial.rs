//! Sparse Laurent monomials over variables indexed by (node, spectral index).
//!
//! One monomial type serves every ring in the crate. The two integers of a
//! [`SpectralIndex`] are read per ring: `(q-exponent, t-exponent)` in the
//! interpolating and q-specialized rings, `(epsilon-class, t-exponent)` in
//! the twisted ring. Exponent maps are kept sorted with no zero entries, so
//! derived ordering and equality are canonical.

use std::cmp::Ordering;
use std::fmt;

/// A point of the spectral lattice `q^Z t^Z` (or `eps^Z t^Z` when twisted).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SpectralIndex {
    pub q: i32,
    pub t: i32,
}

impl SpectralIndex {
    pub fn new(q: i32, t: i32) -> Self {
        SpectralIndex { q, t }
    }

    pub fn shift(self, dq: i32, dt: i32) -> Self {
        SpectralIndex {
            q: self.q + dq,
            t: self.t + dt,
        }
    }

    pub fn add(self, other: Self) -> Self {
        self.shift(other.q, other.t)
    }
}

/// One variable: node index (0-based) plus spectral index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarKey {
    pub node: u8,
    pub a: SpectralIndex,
}

impl VarKey {
    pub fn new(node: usize, q: i32, t: i32) -> Self {
        VarKey {
            node: node as u8,
            a: SpectralIndex::new(q, t),
        }
    }
}

/// A Laurent monomial: finite exponent map, sorted by key, no zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: Vec<(VarKey, i32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(key: VarKey, e: i32) -> Self {
        if e == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: vec![(key, e)],
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarKey, i32)>) -> Self {
        let mut m = Monomial::one();
        for (k, e) in pairs {
            m.mul_var(k, e);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarKey, i32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, key: &VarKey) -> i32 {
        match self.exps.binary_search_by(|(k, _)| k.cmp(key)) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    /// Exponents restricted to one node.
    pub fn node_exps(&self, node: usize) -> impl Iterator<Item = (SpectralIndex, i32)> + '_ {
        let node = node as u8;
        self.exps
            .iter()
            .filter(move |(k, _)| k.node == node)
            .map(|(k, e)| (k.a, *e))
    }

    pub fn mul_var(&mut self, key: VarKey, e: i32) {
        if e == 0 {
            return;
        }
        match self.exps.binary_search_by(|(k, _)| k.cmp(&key)) {
            Ok(i) => {
                self.exps[i].1 += e;
                if self.exps[i].1 == 0 {
                    self.exps.remove(i);
                }
            }
            Err(i) => self.exps.insert(i, (key, e)),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        // merge of two sorted exponent lists
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => {
                    out.push(self.exps[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.exps[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.exps[i].1 + other.exps[j].1;
                    if e != 0 {
                        out.push((self.exps[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|(k, e)| (*k, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|(k, e)| (*k, e * n)).collect(),
        }
    }

    /// Ratio `self / other`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    /// Shift every spectral index by `b` (the algebra morphism `s_b`).
    pub fn shift(&self, b: SpectralIndex) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|(k, e)| {
                    (
                        VarKey {
                            node: k.node,
                            a: k.a.add(b),
                        },
                        *e,
                    )
                })
                .collect(),
        }
    }

    /// Apply a key transform and re-normalize (merging collisions).
    pub fn map_keys(&self, mut f: impl FnMut(VarKey) -> VarKey) -> Monomial {
        Monomial::from_pairs(self.exps.iter().map(|(k, e)| (f(*k), *e)))
    }

    /// Weight in the fundamental-weight basis: per-node exponent sums.
    pub fn weight(&self, rank: usize) -> Vec<i64> {
        let mut w = vec![0i64; rank];
        for (k, e) in &self.exps {
            w[k.node as usize] += *e as i64;
        }
        w
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::render::render_monomial(self, "Y"))
    }
}
