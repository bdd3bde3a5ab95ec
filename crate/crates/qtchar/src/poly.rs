//! Ring-tagged sparse polynomials with exact Coeff coefficients.
//!
//! Terms are kept at full-exponent monomials (the presentation the paper's
//! diagrams print). Equality in the quotient ring is decided by
//! [`CharPoly::normal_form`], which splits every coefficient into its two
//! evaluation components and collapses each component's monomial modulo the
//! kernel of its surviving specialization.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, SpectralIndex};
use crate::render;
use crate::ring::{Ring, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub ring: Ring,
    pub terms: BTreeMap<Monomial, Coeff>,
}

impl CharPoly {
    pub fn zero(ring: Ring) -> Self {
        CharPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = CharPoly::zero(ring);
        for (m, c) in terms {
            p.insert(m, c);
        }
        p
    }

    pub fn monomial(ring: Ring, m: Monomial) -> Self {
        CharPoly::from_terms(ring, [(m, Coeff::one())])
    }

    pub fn insert(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_ring(&self, other: &CharPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::SchemeMismatch(format!(
                "cannot combine {:?} with {:?}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &CharPoly) -> Result<CharPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CharPoly) -> Result<CharPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &CharPoly) -> Result<CharPoly> {
        self.check_ring(other)?;
        let mut out = CharPoly::zero(self.ring.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> CharPoly {
        let mut out = CharPoly::zero(self.ring.clone());
        for (m, v) in &self.terms {
            out.insert(m.clone(), v * c);
        }
        out
    }

    pub fn scale_monomial(&self, m: &Monomial) -> CharPoly {
        CharPoly::from_terms(
            self.ring.clone(),
            self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())),
        )
    }

    /// Shift every spectral index (the algebra morphism s_b).
    pub fn shift(&self, b: SpectralIndex) -> CharPoly {
        CharPoly::from_terms(
            self.ring.clone(),
            self.terms.iter().map(|(k, c)| (k.shift(b), c.clone())),
        )
    }

    /// Canonical normal form: each term is split into its two evaluation
    /// components, each component's monomial is collapsed modulo the kernel
    /// of the specialization that survives there, and the components are
    /// recombined with like monomials merged.
    pub fn normal_form(&self) -> CharPoly {
        match &self.ring {
            Ring::Interp(s) => {
                let mut qw: BTreeMap<Monomial, BigInt> = BTreeMap::new();
                let mut tw: BTreeMap<Monomial, BigInt> = BTreeMap::new();
                for (m, c) in &self.terms {
                    let q = s.part(c, Side::Q);
                    if !q.is_zero() {
                        let k = s.collapse(Side::Q, m);
                        let e = qw.entry(k).or_insert_with(BigInt::zero);
                        *e += q;
                    }
                    let t = s.part(c, Side::T);
                    if !t.is_zero() {
                        let k = s.collapse(Side::T, m);
                        let e = tw.entry(k).or_insert_with(BigInt::zero);
                        *e += t;
                    }
                }
                let mut out = CharPoly::zero(self.ring.clone());
                let keys: std::collections::BTreeSet<Monomial> =
                    qw.keys().chain(tw.keys()).cloned().collect();
                for k in keys {
                    let q = qw.get(&k).cloned().unwrap_or_else(BigInt::zero);
                    let t = tw.get(&k).cloned().unwrap_or_else(BigInt::zero);
                    out.insert(k, s.coeff_from_parts(q, t));
                }
                out
            }
            _ => self.clone(),
        }
    }

    /// Zero test in the quotient ring.
    pub fn is_zero(&self) -> bool {
        self.normal_form().is_empty()
    }

    /// Quotient-ring equality.
    pub fn eq_in_ring(&self, other: &CharPoly) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Coefficient sums on both sides (the two dimension counts).
    pub fn dims(&self) -> (BigInt, BigInt) {
        let mut q = BigInt::zero();
        let mut t = BigInt::zero();
        for c in self.terms.values() {
            match &self.ring {
                Ring::Interp(s) => {
                    q += s.part(c, Side::Q);
                    t += s.part(c, Side::T);
                }
                Ring::Q(_) => q += &c.lam,
                Ring::T(_) => t += &c.lam,
            }
        }
        (q, t)
    }

    /// Number of monomials (with multiplicity) whose coefficient does not
    /// mention the idempotent.
    pub fn iota_free_count(&self) -> BigInt {
        let mut n = BigInt::zero();
        for c in self.terms.values() {
            if !c.has_iota() {
                n += &c.lam;
            }
        }
        n
    }

    /// Terms that are dominant on some side where their coefficient is alive.
    pub fn dominant_terms(&self) -> Vec<(Monomial, Coeff)> {
        self.terms
            .iter()
            .filter(|(m, c)| {
                self.ring.sides().iter().any(|&s| {
                    !self.ring.part(c, s).is_zero()
                        && self.ring.algebra().nodes().all(|i| self.ring.i_dominant(s, m, i))
                })
            })
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

    /// Specialize to the q-ring (t = 1). Reverse-scheme monomials must
    /// decompose into X units wherever the surviving coefficient is nonzero.
    pub fn specialize_q(&self) -> Result<CharPoly> {
        let s = match &self.ring {
            Ring::Interp(s) => s,
            _ => {
                return Err(Error::SchemeMismatch(
                    "specialize_q takes an interpolating polynomial".into(),
                ))
            }
        };
        let mut out = CharPoly::zero(Ring::Q(s.alg.clone()));
        for (m, c) in &self.terms {
            let part = s.part(c, Side::Q);
            if part.is_zero() {
                continue;
            }
            let image = s.specialize_monomial_q(m)?;
            out.insert(
                image,
                Coeff {
                    lam: part,
                    mu: BigInt::zero(),
                },
            );
        }
        Ok(out)
    }

    /// Specialize to the twisted ring (q = eps).
    pub fn specialize_t(&self) -> Result<CharPoly> {
        let s = match &self.ring {
            Ring::Interp(s) => s,
            _ => {
                return Err(Error::SchemeMismatch(
                    "specialize_t takes an interpolating polynomial".into(),
                ))
            }
        };
        let mut out = CharPoly::zero(Ring::T(s.alg.clone()));
        for (m, c) in &self.terms {
            let part = s.part(c, Side::T);
            if part.is_zero() {
                continue;
            }
            let image = s.specialize_monomial_t(m)?;
            out.insert(
                image,
                Coeff {
                    lam: part,
                    mu: BigInt::zero(),
                },
            );
        }
        Ok(out)
    }

    /// Canonical text rendering, one term per line.
    pub fn render(&self) -> String {
        let symbol = self.ring.symbol();
        let letter = self.ring.var_letter();
        let single = self.ring.single_index();
        let mut lines: Vec<String> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            lines.push(render::render_term(c, m, symbol, letter, single));
        }
        lines.join("\n")
    }
}

/// Outcome of the partial-order comparison, with the root-monomial witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Less(Vec<(usize, SpectralIndex)>),
    Greater(Vec<(usize, SpectralIndex)>),
    Incomparable,
}

/// Compare monomials in the Nakajima-style partial order: `m <= m'` iff
/// `m / m'` is a product of inverse root monomials. The witness is found by
/// peeling tops greedily with backtracking, bounded by `cap` total steps.
pub fn compare_partial(ring: &Ring, m: &Monomial, m2: &Monomial, cap: usize) -> Comparison {
    if m == m2 {
        return Comparison::Equal;
    }
    let up = m2.div(m);
    let mut budget = cap;
    if let Some(w) = peel_roots(ring, &up, &mut budget) {
        return Comparison::Less(w);
    }
    let down = m.div(m2);
    let mut budget = cap;
    if let Some(w) = peel_roots(ring, &down, &mut budget) {
        return Comparison::Greater(w);
    }
    Comparison::Incomparable
}

/// Express `p` as a product of positive root monomials, if possible.
fn peel_roots(ring: &Ring, p: &Monomial, budget: &mut usize) -> Option<Vec<(usize, SpectralIndex)>> {
    if p.is_one() {
        return Some(Vec::new());
    }
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    // candidate tops: positive-exponent variables of maximal grade
    let grade = |a: SpectralIndex| match ring {
        Ring::T(_) => (a.t, a.q),
        _ => (a.q + a.t, a.q),
    };
    let mut tops: Vec<(usize, SpectralIndex)> = Vec::new();
    let mut best = None;
    for (k, e) in p.iter() {
        if e <= 0 {
            continue;
        }
        let g = grade(k.a);
        if best.map_or(true, |b| g > b) {
            best = Some(g);
            tops.clear();
        }
        if Some(g) == best {
            tops.push((k.node as usize, k.a));
        }
    }
    for (i, top) in tops {
        // the top of root(i, a) sits at the step offset from a
        let a = match ring {
            Ring::Interp(s) => top.shift(-(s.alg.label(i) as i32), -1),
            Ring::Q(alg) => top.shift(-(alg.label(i) as i32), 0),
            Ring::T(alg) => top.shift(0, -(alg.rdual(i) as i32)),
        };
        let Ok(root) = ring.root(i, a) else { continue };
        let rest = p.div(&root);
        if let Some(mut w) = peel_roots(ring, &rest, budget) {
            w.push((i, a));
            return Some(w);
        }
    }
    None
}

/// Breadth-first enumeration of the dominant members of `D(m0)`. Steps are
/// taken at indices `c * q^u t^v` with `c` in the support of `m0` and
/// `1 <= u, v` bounded by the window implied by `grade_cap`; subtrees whose
/// q-side (or defined t-side) specialization is right-negative are pruned.
pub fn dominant_in_d(
    ring: &Ring,
    m0: &Monomial,
    grade_cap: u32,
    term_cap: usize,
) -> Result<Vec<Monomial>> {
    let scheme = match ring {
        Ring::Interp(s) => s,
        _ => {
            return Err(Error::SchemeMismatch(
                "dominant_in_d runs in an interpolating ring".into(),
            ))
        }
    };
    if !scheme.dominant_both(m0) {
        return Err(Error::InvalidInput("d-set root must be dominant".into()));
    }
    let alg = &scheme.alg;
    let support: Vec<SpectralIndex> = m0.iter().map(|(k, _)| k.a).collect();
    let max_dq = (2 * alg.lacing as i32 + 2) * grade_cap as i32;
    let max_dt = 2 * grade_cap as i32;
    let mut candidates: std::collections::BTreeSet<(usize, SpectralIndex)> =
        std::collections::BTreeSet::new();
    for &c in &support {
        for i in alg.nodes() {
            for dq in 1..=max_dq {
                for dt in 1..=max_dt {
                    candidates.insert((i, c.shift(dq, dt)));
                }
            }
        }
    }
    let q_ring = Ring::Q(alg.clone());
    let t_ring = Ring::T(alg.clone());
    let prunable = |m: &Monomial| -> bool {
        if let Ok(q) = scheme.specialize_monomial_q(m) {
            if !q.is_one() && q_ring.right_negative(&q).unwrap_or(false) {
                return true;
            }
        }
        if let Ok(t) = scheme.specialize_monomial_t(m) {
            if !t.is_one() && t_ring.right_negative(&t).unwrap_or(false) {
                return true;
            }
        }
        false
    };
    // Pruned children are leaves and are not remembered: they are
    // right-negative, hence never dominant, and so are all their descendants.
    let mut seen: std::collections::BTreeSet<Monomial> = std::collections::BTreeSet::new();
    let mut frontier = vec![m0.clone()];
    let mut dominants = vec![m0.clone()];
    seen.insert(m0.clone());
    let mut grade = 0;
    let mut visited = 0usize;
    while !frontier.is_empty() {
        if grade >= grade_cap {
            return Err(Error::Resource(format!(
                "D(m) enumeration exceeded grade cap {grade_cap}"
            )));
        }
        let mut next = Vec::new();
        for m in &frontier {
            for (i, a) in &candidates {
                let child = m.mul(&scheme.root_monomial(*i, *a).inv());
                if seen.contains(&child) {
                    continue;
                }
                visited += 1;
                if visited > term_cap {
                    return Err(Error::Resource(format!(
                        "D(m) enumeration exceeded term cap {term_cap}"
                    )));
                }
                if prunable(&child) {
                    continue;
                }
                if scheme.dominant_both(&child) {
                    dominants.push(child.clone());
                }
                seen.insert(child.clone());
                next.push(child);
            }
        }
        frontier = next;
        grade += 1;
    }
    Ok(dominants)
}
