//! Character algorithms: rank-1 blocks, the inductive worklist construction
//! of F(m), standard products E(m), kernel membership and K-decomposition.
//!
//! The same worklist runs in all three rings. Coefficients are tracked per
//! specialization component; dominance gating, the `s(m_r) = 0` rule and the
//! pairwise consistency condition are all enforced componentwise, which is
//! what makes the interpolating bookkeeping exact.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, SpectralIndex};
use crate::poly::{compare_partial, CharPoly, Comparison};
use crate::ring::{chain_solve, orbit_solve, Direction, Ring, Scheme, Side};

/// Resource caps turning pathological inputs into errors instead of hangs.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub grade: u32,
    pub terms: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            grade: 64,
            terms: 1_000_000,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    Algorithm,
    Fixture,
    Product,
}

/// A computed character with its bookkeeping.
#[derive(Clone, Debug)]
pub struct CharResult {
    pub poly: CharPoly,
    pub highest: Monomial,
    pub dominant: Vec<Monomial>,
    pub dim_q: BigInt,
    pub dim_t: BigInt,
    pub provenance: Provenance,
}

impl CharResult {
    pub fn from_poly(poly: CharPoly, highest: Monomial, provenance: Provenance) -> Self {
        let (dim_q, dim_t) = poly.dims();
        let dominant = poly.dominant_terms().into_iter().map(|(m, _)| m).collect();
        CharResult {
            poly,
            highest,
            dominant,
            dim_q,
            dim_t,
            provenance,
        }
    }
}

/// One generator factor: the implicit leading term plus stepped terms,
/// each a monomial ratio with its grade contribution.
type Factor = Vec<(Monomial, u32)>;

type WeightMap = BTreeMap<Monomial, (BigInt, u32)>;

pub struct Engine {
    pub ring: Ring,
    pub caps: Caps,
    fundamentals: RefCell<HashMap<usize, CharPoly>>,
}

impl Engine {
    pub fn new(ring: Ring, caps: Caps) -> Self {
        Engine {
            ring,
            caps,
            fundamentals: RefCell::new(HashMap::new()),
        }
    }

    pub fn scheme(&self) -> Result<&Scheme> {
        match &self.ring {
            Ring::Interp(s) => Ok(s),
            _ => Err(Error::SchemeMismatch(
                "operation requires an interpolating scheme".into(),
            )),
        }
    }

    /// Positive node-i positions of `m` in the collapse classes of `side`,
    /// after canceling class-internal sign pairs. Canonical choice: positives
    /// with the smallest (t, q) survive cancellation.
    fn lift_positions(
        &self,
        side: Side,
        i: usize,
        m: &Monomial,
    ) -> Result<Vec<(SpectralIndex, i32)>> {
        let class_of = |a: SpectralIndex| -> (i32, i32) {
            match (&self.ring, side) {
                (Ring::Interp(_), Side::Q) => (a.q, 0),
                (Ring::Interp(s), Side::T) => match s.dir {
                    Direction::Forward => (a.q.rem_euclid(s.alg.eps_order()), a.t),
                    Direction::Reverse => {
                        let p = s.alg.eps_order() / s.alg.rdual(i) as i32;
                        (a.q.rem_euclid(p), a.t)
                    }
                },
                _ => (a.q, a.t),
            }
        };
        let mut groups: BTreeMap<(i32, i32), Vec<(SpectralIndex, i32)>> = BTreeMap::new();
        for (a, e) in m.node_exps(i) {
            groups.entry(class_of(a)).or_default().push((a, e));
        }
        let mut out = Vec::new();
        for (_, mut entries) in groups {
            entries.sort_by_key(|(a, _)| (a.t, a.q));
            let net: i32 = entries.iter().map(|(_, e)| e).sum();
            if net < 0 {
                return Err(Error::consistency(
                    m,
                    format!("negative node-{} content in an active component", i + 1),
                ));
            }
            let mut remaining = net;
            for (a, e) in entries {
                if e <= 0 || remaining == 0 {
                    continue;
                }
                let take = e.min(remaining);
                out.push((a, take));
                remaining -= take;
            }
        }
        Ok(out)
    }

    /// Generator factors for the node-i content of `m` in one component.
    fn side_factors(&self, side: Side, i: usize, m: &Monomial) -> Result<Vec<Factor>> {
        match &self.ring {
            Ring::Q(_) | Ring::T(_) => {
                let mut factors = Vec::new();
                for (a, e) in m.node_exps(i) {
                    if e < 0 {
                        return Err(Error::consistency(m, "negative content in rank-1 block"));
                    }
                    let step = self.ring.root(i, self.ring.step_index(i, a))?;
                    for _ in 0..e {
                        factors.push(vec![(Monomial::one(), 0), (step.inv(), 1)]);
                    }
                }
                Ok(factors)
            }
            Ring::Interp(s) => {
                let positions = self.lift_positions(side, i, m)?;
                if side == s.pairing_side() && !s.unit_is_single(i) {
                    self.unit_factors(s, i, m, positions)
                } else {
                    let mut factors = Vec::new();
                    for (p, mult) in positions {
                        let step = s.root_monomial(i, s.step_index(i, p));
                        for _ in 0..mult {
                            factors.push(vec![(Monomial::one(), 0), (step.inv(), 1)]);
                        }
                    }
                    Ok(factors)
                }
            }
        }
    }

    /// Pairing-side factors of a spread node: one full-depth step per unit
    /// monomial of the content.
    fn unit_factors(
        &self,
        s: &Scheme,
        i: usize,
        m: &Monomial,
        positions: Vec<(SpectralIndex, i32)>,
    ) -> Result<Vec<Factor>> {
        let r = s.alg.lacing as i32;
        // class-level content drives the unit solve
        let collapsed: Vec<(SpectralIndex, i32)> = {
            let mut acc: BTreeMap<SpectralIndex, i32> = BTreeMap::new();
            for &(a, e) in &positions {
                let key = match s.dir {
                    Direction::Forward => SpectralIndex::new(a.q.rem_euclid(2 * r), a.t),
                    Direction::Reverse => SpectralIndex::new(a.q, 0),
                };
                *acc.entry(key).or_insert(0) += e;
            }
            acc.into_iter().collect()
        };
        let units = match s.dir {
            Direction::Forward => orbit_solve(&collapsed, r),
            Direction::Reverse => chain_solve(&collapsed, r),
        }
        .ok_or_else(|| {
            Error::consistency(m, format!("node-{} content is not a unit product", i + 1))
        })?;
        // pools of concrete positions per class, consumed smallest-first
        let mut pools: BTreeMap<(i32, i32), Vec<SpectralIndex>> = BTreeMap::new();
        for (a, e) in positions {
            let key = match s.dir {
                Direction::Forward => (a.q.rem_euclid(2 * r), a.t),
                Direction::Reverse => (a.q, 0),
            };
            let pool = pools.entry(key).or_default();
            for _ in 0..e {
                pool.push(a);
            }
        }
        for pool in pools.values_mut() {
            pool.sort_by_key(|a| (a.t, a.q));
            pool.reverse(); // pop() takes the smallest
        }
        let mut factors = Vec::new();
        for (base, count) in units {
            if count < 0 {
                return Err(Error::consistency(m, "negative unit multiplicity"));
            }
            let member_classes: Vec<(i32, i32)> = match s.dir {
                Direction::Forward => (0..r)
                    .map(|k| ((base.q + 2 * k).rem_euclid(2 * r), base.t))
                    .collect(),
                Direction::Reverse => (0..r).map(|k| (base.q - (r - 1) + 2 * k, 0)).collect(),
            };
            for _ in 0..count {
                let mut ratio = Monomial::one();
                for key in &member_classes {
                    let p = pools.get_mut(key).and_then(|v| v.pop()).ok_or_else(|| {
                        Error::consistency(m, "unit members missing from content")
                    })?;
                    ratio = ratio.mul(&s.root_monomial(i, s.step_index(i, p)).inv());
                }
                factors.push(vec![(Monomial::one(), 0), (ratio, r as u32)]);
            }
        }
        Ok(factors)
    }

    /// The rank-1 element of the node-i kernel with unique i-dominant
    /// monomial `anchor`, in one coefficient component.
    fn component_block(
        &self,
        side: Side,
        i: usize,
        anchor: &Monomial,
        depth: u32,
    ) -> Result<WeightMap> {
        if depth > 48 {
            return Err(Error::Resource("rank-1 elimination recursion too deep".into()));
        }
        let factors = self.side_factors(side, i, anchor)?;
        let mut poly: WeightMap = BTreeMap::new();
        poly.insert(anchor.clone(), (BigInt::one(), 0));
        for factor in &factors {
            let mut next: WeightMap = BTreeMap::new();
            for (m, (w, g)) in &poly {
                for (ratio, ds) in factor {
                    let key = m.mul(ratio);
                    let grade = g + ds;
                    match next.entry(key) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert((w.clone(), grade));
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            if o.get().1 != grade {
                                return Err(Error::consistency(
                                    anchor,
                                    "grade collision in rank-1 expansion",
                                ));
                            }
                            o.get_mut().0 += w;
                        }
                    }
                }
            }
            poly = next;
        }
        // eliminate every further i-dominant monomial, closest first
        loop {
            let candidate = poly
                .iter()
                .filter(|(m, (w, _))| {
                    *m != anchor && !w.is_zero() && self.ring.i_dominant(side, m, i)
                })
                .min_by_key(|(m, (_, g))| (*g, (*m).clone()))
                .map(|(m, (w, g))| (m.clone(), w.clone(), *g));
            let Some((m, w, g)) = candidate else { break };
            let sub = self.component_block(side, i, &m, depth + 1)?;
            for (m2, (w2, g2)) in sub {
                let grade = g + g2;
                match poly.entry(m2) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert((-(&w * &w2), grade));
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        if o.get().1 != grade {
                            return Err(Error::consistency(
                                anchor,
                                "grade collision in rank-1 elimination",
                            ));
                        }
                        o.get_mut().0 -= &w * &w2;
                    }
                }
            }
            poly.retain(|_, (w, _)| !w.is_zero());
        }
        poly.retain(|_, (w, _)| !w.is_zero());
        Ok(poly)
    }

    /// The rank-1 block F_{i}(m), assembled componentwise. Terms are
    /// (monomial, coefficient, grade offset); the anchor coefficient is 1 in
    /// every requested component.
    pub fn rank1_block(
        &self,
        i: usize,
        m: &Monomial,
        need_q: bool,
        need_t: bool,
    ) -> Result<Vec<(Monomial, Coeff, u32)>> {
        let q_map = if need_q {
            Some(self.component_block(Side::Q, i, m, 0)?)
        } else {
            None
        };
        let t_map = if need_t {
            Some(self.component_block(Side::T, i, m, 0)?)
        } else {
            None
        };
        let mut keys: std::collections::BTreeSet<&Monomial> = std::collections::BTreeSet::new();
        if let Some(map) = &q_map {
            keys.extend(map.keys());
        }
        if let Some(map) = &t_map {
            keys.extend(map.keys());
        }
        let mut out = Vec::with_capacity(keys.len());
        for key in keys {
            let (qv, qg) = q_map
                .as_ref()
                .and_then(|m| m.get(key))
                .map(|(w, g)| (w.clone(), Some(*g)))
                .unwrap_or((BigInt::zero(), None));
            let (tv, tg) = t_map
                .as_ref()
                .and_then(|m| m.get(key))
                .map(|(w, g)| (w.clone(), Some(*g)))
                .unwrap_or((BigInt::zero(), None));
            let grade = match (qg, tg) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::consistency(key, "component grades disagree"))
                }
                (Some(a), _) => a,
                (_, Some(b)) => b,
                _ => unreachable!(),
            };
            let coeff = self.ring.coeff_from_parts(qv, tv);
            if !coeff.is_zero() {
                out.push((key.clone(), coeff, grade));
            }
        }
        Ok(out)
    }

    /// The main construction: the unique element of the intersected kernels
    /// with unique dominant monomial `m0`.
    pub fn char_f(&self, m0: &Monomial) -> Result<CharResult> {
        self.char_f_with_tie(m0, None)
    }

    /// Same, with an optional tie-breaking permutation of equal-grade
    /// monomials (order-independence is a tested property).
    pub fn char_f_with_tie(
        &self,
        m0: &Monomial,
        tie: Option<&dyn Fn(&Monomial) -> u64>,
    ) -> Result<CharResult> {
        let sides = self.ring.sides();
        for &side in sides {
            if !self
                .ring
                .algebra()
                .nodes()
                .all(|i| self.ring.i_dominant(side, m0, i))
            {
                return Err(Error::InvalidInput(format!(
                    "starting monomial is not dominant on the {side:?} side"
                )));
            }
        }

        type Contribs = HashMap<usize, Coeff>;
        let mut buckets: BTreeMap<u32, BTreeMap<Monomial, Contribs>> = BTreeMap::new();
        let mut result: Vec<(Monomial, Coeff)> = Vec::new();
        let mut processed = 0usize;
        // contribution totals pooled per collapse class, for the Lemma-4.13
        // style consistency verification (per-anchor values may legitimately
        // scatter across a class; the pooled per-J totals must agree)
        let mut pooled: BTreeMap<(usize, Monomial, usize), BigInt> = BTreeMap::new();

        let one = Coeff::one();
        result.push((m0.clone(), one.clone()));

        // push mu_i * F_i(m) contributions into later buckets
        let fire = |this: &Engine,
                    buckets: &mut BTreeMap<u32, BTreeMap<Monomial, Contribs>>,
                    pooled: &mut BTreeMap<(usize, Monomial, usize), BigInt>,
                    m: &Monomial,
                    s: &Coeff,
                    s_j: &Contribs,
                    grade: u32|
         -> Result<()> {
            for i in this.ring.algebra().nodes() {
                let zero = Coeff::zero();
                let sj = s_j.get(&i).unwrap_or(&zero);
                let mu = s - sj;
                let mut q_part = BigInt::zero();
                let mut t_part = BigInt::zero();
                for &side in this.ring.sides() {
                    if this.ring.i_dominant(side, m, i) {
                        let p = this.ring.part(&mu, side);
                        match side {
                            Side::Q => q_part = p,
                            Side::T => t_part = p,
                        }
                    }
                }
                let mu = this.ring.coeff_from_parts(q_part.clone(), t_part.clone());
                if mu.is_zero() {
                    continue;
                }
                let block = this.rank1_block(i, m, !q_part.is_zero(), !t_part.is_zero())?;
                for (target, c, steps) in block {
                    if target == *m {
                        continue;
                    }
                    let contribution = &mu * &c;
                    for &side in this.ring.sides() {
                        let part = this.ring.part(&contribution, side);
                        if !part.is_zero() {
                            let key = (side.index(), this.collapse_key(side, &target), i);
                            *pooled.entry(key).or_insert_with(BigInt::zero) += part;
                        }
                    }
                    let entry = buckets
                        .entry(grade + steps)
                        .or_default()
                        .entry(target)
                        .or_default()
                        .entry(i)
                        .or_insert_with(Coeff::zero);
                    *entry += &contribution;
                }
            }
            Ok(())
        };

        fire(self, &mut buckets, &mut pooled, m0, &one, &HashMap::new(), 0)?;

        while let Some((&grade, _)) = buckets.iter().next() {
            if grade > self.caps.grade {
                return Err(Error::Resource(format!(
                    "grade cap {} exceeded by the worklist",
                    self.caps.grade
                )));
            }
            let bucket = buckets.remove(&grade).unwrap();
            let mut order: Vec<&Monomial> = bucket.keys().collect();
            if let Some(tie) = tie {
                order.sort_by_key(|m| (tie(m), (*m).clone()));
            }
            for m in order {
                let s_j = &bucket[m];
                let mut q_val: Option<BigInt> = None;
                let mut t_val: Option<BigInt> = None;
                for &side in sides {
                    // the side value is read off the first applicable node;
                    // the pooled per-class totals are verified at the end
                    let witness = self
                        .ring
                        .algebra()
                        .nodes()
                        .find(|&i| !self.ring.i_dominant(side, m, i));
                    let value = match witness {
                        None => BigInt::zero(),
                        Some(j) => {
                            let zero = Coeff::zero();
                            self.ring.part(s_j.get(&j).unwrap_or(&zero), side)
                        }
                    };
                    match side {
                        Side::Q => q_val = Some(value),
                        Side::T => t_val = Some(value),
                    }
                }
                let s = self.ring.coeff_from_parts(
                    q_val.unwrap_or_else(BigInt::zero),
                    t_val.unwrap_or_else(BigInt::zero),
                );
                if !s.is_zero() {
                    result.push((m.clone(), s.clone()));
                    processed += 1;
                    if processed > self.caps.terms {
                        return Err(Error::Resource(format!(
                            "term cap {} exceeded by the worklist",
                            self.caps.terms
                        )));
                    }
                }
                fire(self, &mut buckets, &mut pooled, m, &s, s_j, grade)?;
            }
        }

        // pooled consistency: within a collapse class, every applicable node
        // must have received the same total contribution on that side
        {
            let mut class_values: BTreeMap<(usize, &Monomial), Vec<(usize, &BigInt)>> =
                BTreeMap::new();
            for ((side_idx, class, i), v) in &pooled {
                class_values
                    .entry((*side_idx, class))
                    .or_default()
                    .push((*i, v));
            }
            for ((side_idx, class), vals) in class_values {
                let side = if side_idx == 0 { Side::Q } else { Side::T };
                let zero = BigInt::zero();
                let applicable: Vec<&BigInt> = self
                    .ring
                    .algebra()
                    .nodes()
                    .filter(|&i| !self.ring.i_dominant(side, class, i))
                    .map(|i| {
                        vals.iter()
                            .find(|(j, _)| *j == i)
                            .map(|(_, v)| *v)
                            .unwrap_or(&zero)
                    })
                    .collect();
                if applicable.windows(2).any(|w| w[0] != w[1]) {
                    return Err(Error::consistency(
                        class,
                        format!("pooled s_J values disagree on the {side:?} side"),
                    ));
                }
            }
        }

        let result = self.condense(result);
        let poly = CharPoly::from_terms(self.ring.clone(), result);
        let dominant = poly.dominant_terms();
        if dominant.len() != 1 || dominant[0].0 != *m0 {
            return Err(Error::consistency(
                m0,
                format!(
                    "expected a unique dominant monomial, found {}",
                    dominant.len()
                ),
            ));
        }
        let (dim_q, dim_t) = poly.dims();
        Ok(CharResult {
            poly,
            highest: m0.clone(),
            dominant: vec![m0.clone()],
            dim_q,
            dim_t,
            provenance: Provenance::Algorithm,
        })
    }

    fn collapse_key(&self, side: Side, m: &Monomial) -> Monomial {
        match &self.ring {
            Ring::Interp(s) => s.collapse(side, m),
            _ => m.clone(),
        }
    }

    /// Canonical presentation pass: within every t-side collapse class the
    /// t-weight is redistributed so coefficients are as pure as possible.
    /// Members carrying q-weight absorb t up to their q-weight (largest
    /// first); any leftover class weight moves to the largest q-free member,
    /// or stays on the last carrier when the class has none. Every move adds
    /// a multiple of a quotient-zero element, so specializations are
    /// untouched; only the split of specialized multiplicities across
    /// anchors is normalized.
    fn condense(&self, terms: Vec<(Monomial, Coeff)>) -> Vec<(Monomial, Coeff)> {
        let Ring::Interp(_) = &self.ring else {
            return terms;
        };
        let mut merged: BTreeMap<Monomial, (BigInt, BigInt)> = BTreeMap::new();
        for (m, c) in terms {
            let q = self.ring.part(&c, Side::Q);
            let t = self.ring.part(&c, Side::T);
            let entry = merged
                .entry(m)
                .or_insert_with(|| (BigInt::zero(), BigInt::zero()));
            entry.0 += q;
            entry.1 += t;
        }
        let mut classes: BTreeMap<Monomial, Vec<Monomial>> = BTreeMap::new();
        for m in merged.keys() {
            classes
                .entry(self.collapse_key(Side::T, m))
                .or_default()
                .push(m.clone());
        }
        let mut synthesized: Vec<(Monomial, BigInt)> = Vec::new();
        for (class_key, members) in &classes {
            if members.len() < 2 {
                continue;
            }
            if members
                .iter()
                .any(|m| merged[m].0.sign() == num_bigint::Sign::Minus
                    || merged[m].1.sign() == num_bigint::Sign::Minus)
            {
                continue; // only characters are normalized
            }
            let mut total: BigInt = members.iter().map(|m| merged[m].1.clone()).sum();
            let mut carriers: Vec<&Monomial> =
                members.iter().filter(|m| !merged[*m].0.is_zero()).collect();
            carriers.sort_by_key(|m| (merged[*m].0.clone(), (*m).clone()));
            carriers.reverse();
            let mut free: Vec<&Monomial> =
                members.iter().filter(|m| merged[*m].0.is_zero()).collect();
            free.sort();
            for m in members {
                merged.get_mut(m).unwrap().1 = BigInt::zero();
            }
            let last_carrier = carriers.last().cloned();
            for m in &carriers {
                let take = merged[*m].0.clone().min(total.clone());
                merged.get_mut(*m).unwrap().1 = take.clone();
                total -= take;
            }
            if !total.is_zero() {
                match free.last().copied() {
                    Some(receiver) => merged.get_mut(receiver).unwrap().1 += total,
                    None => {
                        // park surplus on the class's collapsed representative
                        // as a fresh pure-idempotent anchor
                        if last_carrier.map_or(false, |c| *c != *class_key) {
                            synthesized.push((class_key.clone(), total));
                        } else if let Some(receiver) = last_carrier {
                            merged.get_mut(receiver).unwrap().1 += total;
                        }
                    }
                }
            }
        }
        for (m, t) in synthesized {
            let entry = merged
                .entry(m)
                .or_insert_with(|| (BigInt::zero(), BigInt::zero()));
            entry.1 += t;
        }
        merged
            .into_iter()
            .map(|(m, (q, t))| (m, self.ring.coeff_from_parts(q, t)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// F(W_{i,a}): the fundamental interpolating character, cached at the
    /// base point and shifted.
    pub fn fundamental(&self, i: usize, a: SpectralIndex) -> Result<CharPoly> {
        let base = {
            let cache = self.fundamentals.borrow();
            cache.get(&i).cloned()
        };
        let base = match base {
            Some(p) => p,
            None => {
                let unit = match &self.ring {
                    Ring::Interp(s) => s.unit_monomial(i, SpectralIndex::new(0, 0)),
                    _ => Monomial::var(crate::monomial::VarKey::new(i, 0, 0), 1),
                };
                let poly = self.char_f(&unit)?.poly;
                self.fundamentals.borrow_mut().insert(i, poly.clone());
                poly
            }
        };
        Ok(base.shift(a))
    }

    /// Decompose a dominant monomial into unit monomials (a W- or X-product).
    pub fn units_of(&self, m: &Monomial) -> Result<Vec<(usize, SpectralIndex)>> {
        let s = self.scheme()?;
        let mut out = Vec::new();
        for i in s.alg.nodes() {
            let content: Vec<(SpectralIndex, i32)> = m.node_exps(i).collect();
            if content.is_empty() {
                continue;
            }
            if content.iter().any(|(_, e)| *e < 0) {
                return Err(Error::InvalidInput(
                    "unit decomposition needs nonnegative exponents".into(),
                ));
            }
            if s.unit_is_single(i) {
                for (a, e) in content {
                    for _ in 0..e {
                        out.push((i, a));
                    }
                }
                continue;
            }
            let r = s.alg.lacing as i32;
            let mut counts: BTreeMap<SpectralIndex, i32> = content.into_iter().collect();
            while let Some((&p, _)) = counts.iter().find(|(_, &e)| e > 0) {
                let base = p.shift(r - 1, 0);
                for k in 0..r {
                    let member = p.shift(2 * k, 0);
                    let e = counts.entry(member).or_insert(0);
                    if *e <= 0 {
                        return Err(Error::InvalidInput(format!(
                            "monomial is not a product of unit monomials at node {}",
                            i + 1
                        )));
                    }
                    *e -= 1;
                }
                out.push((i, base));
            }
        }
        Ok(out)
    }

    /// The standard product E(m): shifted fundamental characters multiplied
    /// along the unit decomposition of `m`.
    pub fn standard_product_e(&self, m: &Monomial) -> Result<CharPoly> {
        let units = self.units_of(m)?;
        let mut out = CharPoly::monomial(self.ring.clone(), Monomial::one());
        for (i, a) in units {
            let f = self.fundamental(i, a)?;
            out = out.mul(&f)?;
        }
        Ok(out)
    }

    /// Coefficient of a monomial read at quotient granularity: each side's
    /// part is summed over the work terms in the same collapse class.
    fn class_coeff(&self, work: &CharPoly, m: &Monomial) -> Coeff {
        let mut q_total = BigInt::zero();
        let mut t_total = BigInt::zero();
        let q_key = self.collapse_key(Side::Q, m);
        let t_key = self.collapse_key(Side::T, m);
        for (m2, c2) in &work.terms {
            if self.collapse_key(Side::Q, m2) == q_key {
                q_total += self.ring.part(c2, Side::Q);
            }
            if self.collapse_key(Side::T, m2) == t_key {
                t_total += self.ring.part(c2, Side::T);
            }
        }
        self.ring.coeff_from_parts(q_total, t_total)
    }

    /// Operational membership test for the node-i kernel, with the
    /// elimination trace.
    pub fn in_kernel_i(&self, poly: &CharPoly, i: usize) -> Result<KernelCheck> {
        let mut work = poly.clone();
        let mut trace = Vec::new();
        for _ in 0..self.caps.terms {
            if work.is_zero() {
                return Ok(KernelCheck::InKernel(trace));
            }
            let mut candidates: Vec<(Monomial, Coeff)> = Vec::new();
            for (m, _) in &work.terms {
                let class = self.class_coeff(&work, m);
                let mut q_part = BigInt::zero();
                let mut t_part = BigInt::zero();
                let mut any = false;
                for &side in self.ring.sides() {
                    let p = self.ring.part(&class, side);
                    if !p.is_zero() && self.ring.i_dominant(side, m, i) {
                        any = true;
                        match side {
                            Side::Q => q_part = p,
                            Side::T => t_part = p,
                        }
                    }
                }
                if any {
                    candidates.push((m.clone(), self.ring.coeff_from_parts(q_part, t_part)));
                }
            }
            if candidates.is_empty() {
                let witness = pick_maximal(&self.ring, work.terms.keys());
                return Ok(KernelCheck::NotInKernel { witness });
            }
            let idx = maximal_index(&self.ring, &candidates);
            let (m, gated) = candidates.swap_remove(idx);
            let block = self.rank1_block(
                i,
                &m,
                !self.ring.part(&gated, Side::Q).is_zero(),
                !self.ring.part(&gated, Side::T).is_zero(),
            )?;
            for (target, c, _) in block {
                work.insert(target, -&(&gated * &c));
            }
            trace.push((m, gated));
        }
        Ok(KernelCheck::Undecided)
    }

    /// Membership in the full kernel (every node).
    pub fn in_kernel(&self, poly: &CharPoly) -> Result<bool> {
        for i in self.ring.algebra().nodes() {
            match self.in_kernel_i(poly, i)? {
                KernelCheck::InKernel(_) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Unique expansion of a kernel element over the F-basis.
    pub fn decompose_k(&self, poly: &CharPoly) -> Result<Vec<(Monomial, Coeff)>> {
        let mut work = poly.clone();
        let mut out: Vec<(Monomial, Coeff)> = Vec::new();
        for _ in 0..self.caps.terms {
            if work.is_zero() {
                return Ok(out);
            }
            // heads are monomials dominant on every side; one-sided dominant
            // residues are consumed by the subtracted F-tails. Coefficients
            // are read at quotient granularity.
            let mut candidates: Vec<(Monomial, Coeff)> = Vec::new();
            for (m, _) in &work.terms {
                let in_b = self.ring.sides().iter().all(|&side| {
                    self.ring
                        .algebra()
                        .nodes()
                        .all(|i| self.ring.i_dominant(side, m, i))
                });
                if in_b {
                    let coeff = self.class_coeff(&work, m);
                    if !coeff.is_zero() {
                        candidates.push((m.clone(), coeff));
                    }
                }
            }
            let mut one_sided: Option<Side> = None;
            if candidates.is_empty() {
                // idempotent-multiplied basis elements: a one-sided dominant
                // residue heads an F at the canonical lift of its collapse;
                // when the lift is itself in B the full algorithm serves,
                // otherwise the specialized algorithm provides the basis
                // element on that side alone
                let mut seen: std::collections::BTreeSet<Monomial> =
                    std::collections::BTreeSet::new();
                let mut fallback: Option<(Monomial, Coeff, Side)> = None;
                for (m, _) in &work.terms {
                    for &side in self.ring.sides() {
                        if !self
                            .ring
                            .algebra()
                            .nodes()
                            .all(|i| self.ring.i_dominant(side, m, i))
                        {
                            continue;
                        }
                        let lift = self.collapse_key(side, m);
                        if !seen.insert(lift.clone()) {
                            continue;
                        }
                        let coeff = self.class_coeff(&work, &lift);
                        let part = self.ring.part(&coeff, side);
                        if part.is_zero() {
                            continue;
                        }
                        let in_b = self.ring.sides().iter().all(|&s| {
                            self.ring
                                .algebra()
                                .nodes()
                                .all(|i| self.ring.i_dominant(s, &lift, i))
                        });
                        if in_b && !coeff.is_zero() {
                            candidates.push((lift, coeff));
                        } else if fallback.is_none() && side == Side::Q {
                            let gated = self.ring.coeff_from_parts(part, BigInt::zero());
                            fallback = Some((lift, gated, side));
                        }
                    }
                }
                if candidates.is_empty() {
                    if let Some((lift, coeff, side)) = fallback {
                        candidates.push((lift, coeff));
                        one_sided = Some(side);
                    }
                }
            }
            if candidates.is_empty() {
                let witness = pick_maximal(&self.ring, work.terms.keys());
                return Err(Error::NotInKernel(crate::render::render_monomial(
                    &witness,
                    self.ring.var_letter(),
                )));
            }
            let idx = maximal_index(&self.ring, &candidates);
            let (m, coeff) = candidates.swap_remove(idx);
            let f = match one_sided {
                None => self.char_f(&m)?.poly,
                Some(Side::Q) => {
                    // the q-side character lifted at zero t-exponents
                    let plain = Engine::new(Ring::Q(self.ring.algebra().clone()), self.caps)
                        .char_f(&m)?
                        .poly;
                    CharPoly::from_terms(self.ring.clone(), plain.terms)
                }
                Some(Side::T) => {
                    return Err(Error::NotInKernel(crate::render::render_monomial(
                        &m,
                        self.ring.var_letter(),
                    )))
                }
            };
            let scaled = f.scale(&coeff);
            work = work.sub(&scaled)?;
            out.push((m, coeff));
        }
        Err(Error::Resource("decomposition exceeded the term cap".into()))
    }
}

/// Outcome of the operational kernel membership test.
#[derive(Clone, Debug)]
pub enum KernelCheck {
    InKernel(Vec<(Monomial, Coeff)>),
    NotInKernel { witness: Monomial },
    Undecided,
}

impl KernelCheck {
    pub fn is_in(&self) -> bool {
        matches!(self, KernelCheck::InKernel(_))
    }
}

fn maximal_index(ring: &Ring, candidates: &[(Monomial, Coeff)]) -> usize {
    let mut best = 0;
    for i in 1..candidates.len() {
        if let Comparison::Greater(_) =
            compare_partial(ring, &candidates[i].0, &candidates[best].0, 128)
        {
            best = i;
        }
    }
    best
}

fn pick_maximal<'a>(ring: &Ring, terms: impl Iterator<Item = &'a Monomial>) -> Monomial {
    let all: Vec<&Monomial> = terms.collect();
    let mut best = all[0];
    for m in &all[1..] {
        if let Comparison::Greater(_) = compare_partial(ring, m, best, 128) {
            best = m;
        }
    }
    best.clone()
}
