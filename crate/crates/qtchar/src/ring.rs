//! Interpolation schemes and their three variable systems.
//!
//! A [`Scheme`] is an algebra plus a direction. Forward schemes interpolate
//! from an untwisted q-character ring to the twisted t-character ring of the
//! Langlands dual; reverse schemes go the other way. The specialized rings
//! are shared between directions.
//!
//! Monomial conventions per ring:
//! * interpolating: variable `(i, q^x t^y)`;
//! * q-ring: `(i, q^x)` with the second coordinate zero;
//! * twisted ring: `(i, eps^e t^y)` with `e` reduced mod `2 * lacing`
//!   and minus signs folded into `e` via `-1 = eps^lacing`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::lie::AlgebraSpec;
use crate::monomial::{Monomial, SpectralIndex, VarKey};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Forward,
    Reverse,
}

/// The two specializations of a scheme, also used as component labels for
/// coefficient bookkeeping: the idempotent survives on exactly one side.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Q,
    T,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Q, Side::T];

    pub fn index(self) -> usize {
        match self {
            Side::Q => 0,
            Side::T => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scheme {
    pub alg: Arc<AlgebraSpec>,
    pub dir: Direction,
}

impl PartialEq for Scheme {
    fn eq(&self, other: &Self) -> bool {
        self.dir == other.dir && self.alg.name == other.alg.name
    }
}
impl Eq for Scheme {}

impl Scheme {
    pub fn forward(alg: Arc<AlgebraSpec>) -> Self {
        Scheme {
            alg,
            dir: Direction::Forward,
        }
    }

    pub fn reverse(alg: Arc<AlgebraSpec>) -> Self {
        Scheme {
            alg,
            dir: Direction::Reverse,
        }
    }

    /// The idempotent symbol used in renderings: a, b, aL or bL.
    pub fn symbol(&self) -> &'static str {
        match (self.dir, self.alg.lacing) {
            (Direction::Forward, 3) => "b",
            (Direction::Forward, _) => "a",
            (Direction::Reverse, 3) => "bL",
            (Direction::Reverse, _) => "aL",
        }
    }

    /// The side on which the idempotent maps to 1.
    pub fn iota_side(&self) -> Side {
        match self.dir {
            Direction::Forward => Side::Q,
            Direction::Reverse => Side::T,
        }
    }

    /// The side on which the idempotent dies; monomials with coefficients
    /// alive here must decompose into unit monomials (W resp. X products).
    pub fn pairing_side(&self) -> Side {
        match self.dir {
            Direction::Forward => Side::T,
            Direction::Reverse => Side::Q,
        }
    }

    /// A node whose unit is a single variable (forward: long nodes;
    /// reverse: nodes that are long on the dual side).
    pub fn unit_is_single(&self, i: usize) -> bool {
        match self.dir {
            Direction::Forward => self.alg.is_long(i),
            Direction::Reverse => self.alg.label(i) == 1,
        }
    }

    /// Coefficient component on a given side.
    pub fn part(&self, c: &Coeff, side: Side) -> BigInt {
        if side == self.iota_side() {
            c.at_one()
        } else {
            c.at_zero()
        }
    }

    pub fn coeff_from_parts(&self, q: BigInt, t: BigInt) -> Coeff {
        match self.dir {
            Direction::Forward => Coeff::from_evals(t, q),
            Direction::Reverse => Coeff::from_evals(q, t),
        }
    }

    /// The unit monomial W_{i,a} (forward) or X_{i,a} (reverse).
    pub fn unit_monomial(&self, i: usize, a: SpectralIndex) -> Monomial {
        if self.unit_is_single(i) {
            return Monomial::var(VarKey { node: i as u8, a }, 1);
        }
        let r = self.alg.lacing as i32;
        Monomial::from_pairs((0..r).map(|k| {
            (
                VarKey {
                    node: i as u8,
                    a: a.shift(2 * k - (r - 1), 0),
                },
                1,
            )
        }))
    }

    /// The interpolating root monomial at node `i` and spectral index `a`:
    /// the node-i pair at `a (q^{r_i} t)^{+-1}` times inverse neighbor
    /// spreads (forward width `|C[j][i]|`, reverse width `|C[i][j]|`).
    pub fn root_monomial(&self, i: usize, a: SpectralIndex) -> Monomial {
        let ri = self.alg.label(i) as i32;
        let mut m = Monomial::from_pairs([
            (
                VarKey {
                    node: i as u8,
                    a: a.shift(-ri, -1),
                },
                1,
            ),
            (
                VarKey {
                    node: i as u8,
                    a: a.shift(ri, 1),
                },
                1,
            ),
        ]);
        for j in self.alg.neighbors(i) {
            let width = match self.dir {
                Direction::Forward => -self.alg.cartan[j][i],
                Direction::Reverse => -self.alg.cartan[i][j],
            } as i32;
            for k in 0..width {
                m.mul_var(
                    VarKey {
                        node: j as u8,
                        a: a.shift(2 * k - (width - 1), 0),
                    },
                    -1,
                );
            }
        }
        m
    }

    /// Spectral index of the generator step attached to a variable at `p`.
    pub fn step_index(&self, i: usize, p: SpectralIndex) -> SpectralIndex {
        p.shift(self.alg.label(i) as i32, 1)
    }

    /// Collapse a monomial to its image class on one side. The q-side view
    /// strips t-exponents; the t-side view reduces q-exponents modulo the
    /// node's epsilon period. Both stay in interpolating-variable form.
    pub fn collapse(&self, side: Side, m: &Monomial) -> Monomial {
        match (side, self.dir) {
            (Side::Q, _) => m.map_keys(|k| VarKey {
                node: k.node,
                a: SpectralIndex::new(k.a.q, 0),
            }),
            (Side::T, Direction::Forward) => {
                let period = self.alg.eps_order();
                m.map_keys(|k| VarKey {
                    node: k.node,
                    a: SpectralIndex::new(k.a.q.rem_euclid(period), k.a.t),
                })
            }
            (Side::T, Direction::Reverse) => m.map_keys(|k| {
                let period = self.alg.eps_order() / self.alg.rdual(k.node as usize) as i32;
                VarKey {
                    node: k.node,
                    a: SpectralIndex::new(k.a.q.rem_euclid(period), k.a.t),
                }
            }),
        }
    }

    /// Node-i dominance of the side-collapsed monomial. On the pairing side
    /// of a spread node this additionally requires the content to decompose
    /// into nonnegative powers of unit monomials.
    pub fn i_dominant(&self, side: Side, m: &Monomial, i: usize) -> bool {
        let c = self.collapse(side, m);
        let content: Vec<(SpectralIndex, i32)> = c.node_exps(i).collect();
        if content.is_empty() {
            return true;
        }
        if side != self.pairing_side() || self.unit_is_single(i) {
            return content.iter().all(|(_, e)| *e >= 0);
        }
        match self.dir {
            Direction::Forward => orbit_solve(&content, self.alg.lacing as i32)
                .map_or(false, |units| units.iter().all(|(_, e)| *e >= 0)),
            Direction::Reverse => chain_solve(&content, self.alg.lacing as i32)
                .map_or(false, |units| units.iter().all(|(_, e)| *e >= 0)),
        }
    }

    pub fn dominant(&self, side: Side, m: &Monomial) -> bool {
        self.alg.nodes().all(|i| self.i_dominant(side, m, i))
    }

    /// Dominant as a coefficient-free monomial: on both sides.
    pub fn dominant_both(&self, m: &Monomial) -> bool {
        Side::BOTH.iter().all(|&s| self.dominant(s, m))
    }

    /// Specialize one interpolating monomial to the q-ring, together with the
    /// coefficient factor. Fails when a reverse monomial does not decompose
    /// into X units.
    pub fn specialize_monomial_q(&self, m: &Monomial) -> Result<Monomial> {
        let stripped = self.collapse(Side::Q, m);
        match self.dir {
            Direction::Forward => Ok(stripped),
            Direction::Reverse => {
                let mut out = Monomial::one();
                for i in self.alg.nodes() {
                    let content: Vec<(SpectralIndex, i32)> = stripped.node_exps(i).collect();
                    if content.is_empty() {
                        continue;
                    }
                    if self.unit_is_single(i) {
                        for (a, e) in content {
                            out.mul_var(VarKey { node: i as u8, a }, e);
                        }
                    } else {
                        let units = chain_solve(&content, self.alg.lacing as i32).ok_or_else(
                            || Error::Identification {
                                reason: format!("node {} content is not an X-product", i + 1),
                                monomial: crate::render::render_monomial(m, "Y"),
                            },
                        )?;
                        for (a, e) in units {
                            out.mul_var(VarKey { node: i as u8, a }, e);
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Specialize one interpolating monomial to the twisted ring. Forward
    /// short-node content must pair into eps-orbits.
    pub fn specialize_monomial_t(&self, m: &Monomial) -> Result<Monomial> {
        let period = self.alg.eps_order();
        let r = self.alg.lacing as i32;
        let mut out = Monomial::one();
        match self.dir {
            Direction::Forward => {
                let reduced = self.collapse(Side::T, m);
                for i in self.alg.nodes() {
                    let content: Vec<(SpectralIndex, i32)> = reduced.node_exps(i).collect();
                    if content.is_empty() {
                        continue;
                    }
                    let phi = self.alg.phi(i) as i32;
                    if self.alg.is_long(i) {
                        for (a, e) in content {
                            let cls = (a.q + r * phi).rem_euclid(period);
                            out.mul_var(VarKey::new(i, cls, a.t), e);
                        }
                    } else {
                        let orbits =
                            orbit_solve(&content, r).ok_or_else(|| Error::Identification {
                                reason: format!(
                                    "node {} content does not pair into eps-orbits",
                                    i + 1
                                ),
                                monomial: crate::render::render_monomial(m, "Y"),
                            })?;
                        for (base, e) in orbits {
                            let cls = (r * base.q + r * phi).rem_euclid(period);
                            out.mul_var(VarKey::new(i, cls, r * base.t), e);
                        }
                    }
                }
                Ok(out)
            }
            Direction::Reverse => {
                for (k, e) in m.iter() {
                    let i = k.node as usize;
                    let rd = self.alg.rdual(i) as i32;
                    let cls = (rd * k.a.q + r * (1 + self.alg.phi(i) as i32)).rem_euclid(period);
                    out.mul_var(VarKey::new(i, cls, rd * k.a.t), e);
                }
                Ok(out)
            }
        }
    }
}

/// Solve spread-node content on the forward pairing side: group reduced
/// classes by (parity, t) and require all `r` classes of an orbit to carry
/// one common exponent. Returns (orbit base at the parity representative, e).
pub(crate) fn orbit_solve(
    content: &[(SpectralIndex, i32)],
    r: i32,
) -> Option<Vec<(SpectralIndex, i32)>> {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<(i32, i32), BTreeMap<i32, i32>> = BTreeMap::new();
    for (a, e) in content {
        groups
            .entry((a.q.rem_euclid(2), a.t))
            .or_default()
            .insert(a.q, *e);
    }
    let mut out = Vec::new();
    for ((parity, t), classes) in groups {
        let common = *classes.values().next().unwrap();
        // every class of the orbit must carry the same exponent
        if classes.len() != r as usize || classes.values().any(|&e| e != common) {
            return None;
        }
        if classes.keys().any(|&x| (x - parity).rem_euclid(2) != 0) {
            return None;
        }
        out.push((SpectralIndex::new(parity, t), common));
    }
    Some(out)
}

/// Solve spread-node content on the reverse pairing side: exponents
/// `u(x) = sum_k c(x - (r-1) + 2k)` for unit centers `c`. Returns the unit
/// center exponents when an exact finite solution exists.
pub(crate) fn chain_solve(
    content: &[(SpectralIndex, i32)],
    r: i32,
) -> Option<Vec<(SpectralIndex, i32)>> {
    use std::collections::BTreeMap;
    // split by parity class of x; t-exponents must be zero (stripped)
    let mut by_parity: BTreeMap<i32, BTreeMap<i32, i32>> = BTreeMap::new();
    for (a, e) in content {
        debug_assert_eq!(a.t, 0);
        by_parity
            .entry(a.q.rem_euclid(2))
            .or_default()
            .insert(a.q, *e);
    }
    let mut out = Vec::new();
    for (_, u) in by_parity {
        let (&min_x, _) = u.iter().next().unwrap();
        let (&max_x, _) = u.iter().next_back().unwrap();
        let mut c: BTreeMap<i32, i32> = BTreeMap::new();
        for x in (min_x..=max_x).step_by(2) {
            let mut v = *u.get(&x).unwrap_or(&0);
            // subtract contributions of already-known centers touching x
            for k in 1..r {
                if let Some(cc) = c.get(&(x + (r - 1) - 2 * k)) {
                    v -= cc;
                }
            }
            if v != 0 {
                c.insert(x + (r - 1), v);
            }
        }
        // verify: the reconstruction must close off beyond the support
        for x in (max_x + 2..=max_x + 2 * (r - 1)).step_by(2) {
            let mut v = 0;
            for k in 1..r {
                if let Some(cc) = c.get(&(x + (r - 1) - 2 * k)) {
                    v += cc;
                }
            }
            if v != 0 {
                return None;
            }
        }
        for (x, e) in c {
            out.push((SpectralIndex::new(x, 0), e));
        }
    }
    Some(out)
}

/// A concrete polynomial ring: interpolating, q-specialized, or twisted.
#[derive(Clone, Debug)]
pub enum Ring {
    Interp(Scheme),
    Q(Arc<AlgebraSpec>),
    T(Arc<AlgebraSpec>),
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Ring::Interp(a), Ring::Interp(b)) => a == b,
            (Ring::Q(a), Ring::Q(b)) | (Ring::T(a), Ring::T(b)) => a.name == b.name,
            _ => false,
        }
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        match self {
            Ring::Interp(s) => &s.alg,
            Ring::Q(a) | Ring::T(a) => a,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Ring::Interp(s) => s.symbol(),
            Ring::Q(_) | Ring::T(_) => "I",
        }
    }

    pub fn var_letter(&self) -> &'static str {
        match self {
            Ring::T(_) => "Z",
            _ => "Y",
        }
    }

    pub fn single_index(&self) -> bool {
        matches!(self, Ring::Q(_))
    }

    /// Active coefficient components of this ring.
    pub fn sides(&self) -> &'static [Side] {
        match self {
            Ring::Interp(_) => &Side::BOTH,
            Ring::Q(_) => &[Side::Q],
            Ring::T(_) => &[Side::T],
        }
    }

    pub fn part(&self, c: &Coeff, side: Side) -> BigInt {
        match self {
            Ring::Interp(s) => s.part(c, side),
            _ => c.lam.clone(),
        }
    }

    pub fn coeff_from_parts(&self, q: BigInt, t: BigInt) -> Coeff {
        match self {
            Ring::Interp(s) => s.coeff_from_parts(q, t),
            Ring::Q(_) => Coeff { lam: q, mu: BigInt::zero() },
            Ring::T(_) => Coeff { lam: t, mu: BigInt::zero() },
        }
    }

    /// The root monomial used for steps in this ring.
    pub fn root(&self, i: usize, a: SpectralIndex) -> Result<Monomial> {
        match self {
            Ring::Interp(s) => Ok(s.root_monomial(i, a)),
            Ring::Q(alg) => {
                let ri = alg.label(i) as i32;
                let mut m = Monomial::from_pairs([
                    (VarKey::new(i, a.q - ri, 0), 1),
                    (VarKey::new(i, a.q + ri, 0), 1),
                ]);
                for j in alg.neighbors(i) {
                    let width = (-alg.cartan[j][i]) as i32;
                    for k in 0..width {
                        m.mul_var(VarKey::new(j, a.q + 2 * k - (width - 1), 0), -1);
                    }
                }
                Ok(m)
            }
            Ring::T(alg) => twisted_root(alg, i, a),
        }
    }

    /// Generator step index from a variable position.
    pub fn step_index(&self, i: usize, p: SpectralIndex) -> SpectralIndex {
        match self {
            Ring::Interp(s) => s.step_index(i, p),
            Ring::Q(alg) => SpectralIndex::new(p.q + alg.label(i) as i32, 0),
            Ring::T(alg) => SpectralIndex::new(p.q, p.t + alg.rdual(i) as i32),
        }
    }

    /// Node-i dominance of a monomial in this ring, per coefficient side.
    pub fn i_dominant(&self, side: Side, m: &Monomial, i: usize) -> bool {
        match self {
            Ring::Interp(s) => s.i_dominant(side, m, i),
            _ => m.node_exps(i).all(|(_, e)| e >= 0),
        }
    }

    pub fn dominant_sides(&self, m: &Monomial, c: &Coeff) -> bool {
        self.sides().iter().all(|&s| {
            self.part(c, s).is_zero() || self.algebra().nodes().all(|i| self.i_dominant(s, m, i))
        }) && self.sides().iter().any(|&s| !self.part(c, s).is_zero())
    }

    /// Right-negativity of a specialized monomial (Frenkel-Mukhin sense).
    /// q-ring: the maximal q-offset carries only negative exponents.
    /// Twisted ring: the offset of a variable is its t-exponent divided by
    /// the node's dual label, and the maximal offset carries only negative
    /// exponents. The normalization makes the inverse twisted root monomials
    /// right-negative, which is what the termination argument needs.
    pub fn right_negative(&self, m: &Monomial) -> Result<bool> {
        if m.is_one() {
            return Err(Error::InvalidInput(
                "right-negativity is undefined for the trivial monomial".into(),
            ));
        }
        match self {
            Ring::Q(_) => {
                let top = m.iter().map(|(k, _)| k.a.q).max().unwrap();
                Ok(m.iter().all(|(k, e)| k.a.q != top || e < 0))
            }
            Ring::T(alg) => {
                // compare offsets t/rdual exactly via cross-multiplication
                let rd = |k: &VarKey| alg.rdual(k.node as usize) as i64;
                let mut top: Option<VarKey> = None;
                for (k, _) in m.iter() {
                    let better = match &top {
                        None => true,
                        Some(t) => (k.a.t as i64) * rd(t) > (t.a.t as i64) * rd(&k),
                    };
                    if better {
                        top = Some(k);
                    }
                }
                let top = top.unwrap();
                Ok(m.iter().all(|(k, e)| {
                    (k.a.t as i64) * rd(&top) != (top.a.t as i64) * rd(&k) || e < 0
                }))
            }
            Ring::Interp(_) => Err(Error::InvalidInput(
                "right-negativity applies to specialized monomials".into(),
            )),
        }
    }
}

/// Twisted root monomials B_{i,(e,y)} in eps-class coordinates.
fn twisted_root(alg: &AlgebraSpec, i: usize, a: SpectralIndex) -> Result<Monomial> {
    let period = alg.eps_order();
    let r = alg.lacing as i32;
    let e = a.q.rem_euclid(period);
    let y = a.t;
    let dual_short = |j: usize| alg.rdual(j) == 1;
    let mut m;
    if dual_short(i) {
        m = Monomial::from_pairs([
            (VarKey::new(i, e, y - 1), 1),
            (VarKey::new(i, e, y + 1), 1),
        ]);
        for j in alg.neighbors(i) {
            if dual_short(j) {
                m.mul_var(VarKey::new(j, e, y), -1);
            } else {
                m.mul_var(VarKey::new(j, (r * e).rem_euclid(period), r * y), -1);
            }
        }
    } else {
        m = Monomial::from_pairs([
            (VarKey::new(i, e, y - r), 1),
            (VarKey::new(i, e, y + r), 1),
        ]);
        for j in alg.neighbors(i) {
            if !dual_short(j) {
                m.mul_var(VarKey::new(j, e, y), -1);
            } else {
                // the r eps-th roots of eps^e t^y
                if e % r != 0 || y % r != 0 {
                    return Err(Error::InvalidInput(format!(
                        "twisted root B[{},(eps^{e} t^{y})] has no eps-th roots",
                        i + 1
                    )));
                }
                for k in 0..r {
                    m.mul_var(VarKey::new(j, (e / r + 2 * k).rem_euclid(period), y / r), -1);
                }
            }
        }
    }
    Ok(m)
}

/// Kinds of kernel-subalgebra generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenKind {
    /// The unit-monomial generator (a chain forward, a full subset cube in
    /// reverse; a plain two-term string on single-unit nodes).
    Unit,
    /// `iota * v_{i,a} (1 + root^{-1})`, only available on spread nodes.
    IotaSingle,
}

impl Scheme {
    /// Positions of the unit monomial at `a`, ascending.
    pub fn unit_positions(&self, i: usize, a: SpectralIndex) -> Vec<SpectralIndex> {
        if self.unit_is_single(i) {
            vec![a]
        } else {
            let r = self.alg.lacing as i32;
            (0..r).map(|k| a.shift(2 * k - (r - 1), 0)).collect()
        }
    }

    /// The generator of K_{i,q,t} of the given kind at spectral index `a`,
    /// as a list of (monomial, coefficient) terms.
    pub fn kernel_generator_terms(
        &self,
        i: usize,
        a: SpectralIndex,
        kind: GenKind,
    ) -> Result<Vec<(Monomial, Coeff)>> {
        match kind {
            GenKind::IotaSingle => {
                if self.unit_is_single(i) {
                    return Err(Error::InvalidInput(format!(
                        "node {} has no iota-single generator",
                        i + 1
                    )));
                }
                let v = Monomial::var(VarKey { node: i as u8, a }, 1);
                let step = self.root_monomial(i, self.step_index(i, a));
                Ok(vec![
                    (v.clone(), Coeff::iota()),
                    (v.mul(&step.inv()), Coeff::iota()),
                ])
            }
            GenKind::Unit => {
                let unit = self.unit_monomial(i, a);
                if self.unit_is_single(i) {
                    let step = self.root_monomial(i, self.step_index(i, a));
                    return Ok(vec![
                        (unit.clone(), Coeff::one()),
                        (unit.mul(&step.inv()), Coeff::one()),
                    ]);
                }
                let positions = self.unit_positions(i, a);
                let r = positions.len();
                let steps: Vec<Monomial> = positions
                    .iter()
                    .map(|&p| self.root_monomial(i, self.step_index(i, p)))
                    .collect();
                let mut terms = Vec::new();
                match self.dir {
                    Direction::Forward => {
                        // chain: apply steps from the top position downward
                        let mut m = unit.clone();
                        for d in 0..=r {
                            let coeff = if d == 0 || d == r {
                                Coeff::one()
                            } else {
                                Coeff::iota()
                            };
                            terms.push((m.clone(), coeff));
                            if d < r {
                                m = m.mul(&steps[r - 1 - d].inv());
                            }
                        }
                    }
                    Direction::Reverse => {
                        // cube: every subset, proper nonempty ones carry iota
                        for mask in 0..(1u32 << r) {
                            let mut m = unit.clone();
                            for (k, step) in steps.iter().enumerate() {
                                if mask & (1 << k) != 0 {
                                    m = m.mul(&step.inv());
                                }
                            }
                            let popcount = mask.count_ones() as usize;
                            let coeff = if popcount == 0 || popcount == r {
                                Coeff::one()
                            } else {
                                Coeff::iota()
                            };
                            terms.push((m, coeff));
                        }
                    }
                }
                Ok(terms)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_algebra;

    fn scheme(ty: &str, dir: Direction) -> Scheme {
        Scheme {
            alg: Arc::new(build_algebra(ty, None).unwrap()),
            dir,
        }
    }

    fn si(q: i32, t: i32) -> SpectralIndex {
        SpectralIndex::new(q, t)
    }

    #[test]
    fn w_monomials() {
        let c2 = scheme("C2", Direction::Forward);
        // W_{2,(1,0)} = Y_{2,(0,0)} Y_{2,(2,0)}
        let w = c2.unit_monomial(1, si(1, 0));
        assert_eq!(
            w,
            Monomial::from_pairs([(VarKey::new(1, 0, 0), 1), (VarKey::new(1, 2, 0), 1)])
        );
        // W_{1,(0,0)} = Y_{1,(0,0)}
        assert_eq!(
            c2.unit_monomial(0, si(0, 0)),
            Monomial::var(VarKey::new(0, 0, 0), 1)
        );
        let g2 = scheme("G2", Direction::Forward);
        // W_{2,(2,0)} = Y_{2,(0,0)} Y_{2,(2,0)} Y_{2,(4,0)}
        assert_eq!(
            g2.unit_monomial(1, si(2, 0)),
            Monomial::from_pairs([
                (VarKey::new(1, 0, 0), 1),
                (VarKey::new(1, 2, 0), 1),
                (VarKey::new(1, 4, 0), 1)
            ])
        );
    }

    #[test]
    fn root_monomials_match_diagrams() {
        // A_1 with labels 2: root at (2,1) connects Y_{1,(0,0)} to Y_{1,(4,2)}
        let a1 = Scheme {
            alg: Arc::new(build_algebra("A1", Some(2)).unwrap()),
            dir: Direction::Forward,
        };
        assert_eq!(
            a1.root_monomial(0, si(2, 1)),
            Monomial::from_pairs([(VarKey::new(0, 0, 0), 1), (VarKey::new(0, 4, 2), 1)])
        );
        // C_2: root(2, (4,2)) = Y_{2,(3,1)} Y_{2,(5,3)} Y_{1,(4,2)}^{-1}
        let c2 = scheme("C2", Direction::Forward);
        assert_eq!(
            c2.root_monomial(1, si(4, 2)),
            Monomial::from_pairs([
                (VarKey::new(1, 3, 1), 1),
                (VarKey::new(1, 5, 3), 1),
                (VarKey::new(0, 4, 2), -1)
            ])
        );
        // G_2: root(1,a) has the inverse node-2 triple around a
        let g2 = scheme("G2", Direction::Forward);
        assert_eq!(
            g2.root_monomial(0, si(0, 0)),
            Monomial::from_pairs([
                (VarKey::new(0, -3, -1), 1),
                (VarKey::new(0, 3, 1), 1),
                (VarKey::new(1, -2, 0), -1),
                (VarKey::new(1, 0, 0), -1),
                (VarKey::new(1, 2, 0), -1)
            ])
        );
        // reverse C_2: B(2,a) carries the inverse X-pair of node 1
        let c2r = scheme("C2", Direction::Reverse);
        assert_eq!(
            c2r.root_monomial(1, si(1, 1)),
            Monomial::from_pairs([
                (VarKey::new(1, 0, 0), 1),
                (VarKey::new(1, 2, 2), 1),
                (VarKey::new(0, 0, 1), -1),
                (VarKey::new(0, 2, 1), -1)
            ])
        );
        // reverse G_2, Definition-style: B(1,a) = z_{1,a(q^3 t)^{-1}} z_{1,aq^3t} z_{2,a}^{-1}
        let g2r = scheme("G2", Direction::Reverse);
        assert_eq!(
            g2r.root_monomial(0, si(0, 0)),
            Monomial::from_pairs([
                (VarKey::new(0, -3, -1), 1),
                (VarKey::new(0, 3, 1), 1),
                (VarKey::new(1, 0, 0), -1)
            ])
        );
    }

    #[test]
    fn specialize_t_c2_example() {
        // Y_{2,(3,3)}^{-1} Y_{2,(5,3)}^{-1} Y_{1,(2,2)} -> Z_{2,t^6}^{-1} Z_{1,-t^2}
        let c2 = scheme("C2", Direction::Forward);
        let m = Monomial::from_pairs([
            (VarKey::new(1, 3, 3), -1),
            (VarKey::new(1, 5, 3), -1),
            (VarKey::new(0, 2, 2), 1),
        ]);
        let z = c2.specialize_monomial_t(&m).unwrap();
        assert_eq!(
            z,
            Monomial::from_pairs([(VarKey::new(1, 0, 6), -1), (VarKey::new(0, 2, 2), 1)])
        );
    }

    #[test]
    fn specialize_t_g2_orbit() {
        // Y_{2,a} Y_{2,eps^2 a} Y_{2,eps^4 a} -> Z_{2,-a^3}
        let g2 = scheme("G2", Direction::Forward);
        let m = Monomial::from_pairs([
            (VarKey::new(1, 0, 0), 1),
            (VarKey::new(1, 2, 0), 1),
            (VarKey::new(1, 4, 0), 1),
        ]);
        let z = g2.specialize_monomial_t(&m).unwrap();
        // phi(2) = 1 so the class is eps^3 = -1
        assert_eq!(z, Monomial::var(VarKey::new(1, 3, 0), 1));
    }

    #[test]
    fn specialize_t_unpairable_fails() {
        let c2 = scheme("C2", Direction::Forward);
        let m = Monomial::var(VarKey::new(1, 0, 0), 1);
        assert!(c2.specialize_monomial_t(&m).is_err());
    }

    #[test]
    fn reverse_specializations() {
        let c2r = scheme("C2", Direction::Reverse);
        // z_{2,(2,2)}^{-1} z_{1,(0,1)} z_{1,(2,1)}: Pi_t gives
        // Z_{2,t^4}^{-1} Z_{1,-t} Z_{1,t}; Pi_q gives Y_{2,(2)}^{-1} Y_{1,(1)}
        let m = Monomial::from_pairs([
            (VarKey::new(1, 2, 2), -1),
            (VarKey::new(0, 0, 1), 1),
            (VarKey::new(0, 2, 1), 1),
        ]);
        let z = c2r.specialize_monomial_t(&m).unwrap();
        assert_eq!(
            z,
            Monomial::from_pairs([
                (VarKey::new(1, 0, 4), -1),
                (VarKey::new(0, 2, 1), 1),
                (VarKey::new(0, 0, 1), 1)
            ])
        );
        let q = c2r.specialize_monomial_q(&m).unwrap();
        assert_eq!(
            q,
            Monomial::from_pairs([(VarKey::new(1, 2, 0), -1), (VarKey::new(0, 1, 0), 1)])
        );
    }

    #[test]
    fn twisted_roots_against_lemma() {
        // C_2 twisted: B_{2,(2,2)} = Z_{2,(2,0)} Z_{2,(2,4)} Z_{1,(1,1)}^{-1} Z_{1,(3,1)}^{-1}
        let alg = Arc::new(build_algebra("C2", None).unwrap());
        let ring = Ring::T(alg);
        let b = ring.root(1, si(2, 2)).unwrap();
        assert_eq!(
            b,
            Monomial::from_pairs([
                (VarKey::new(1, 2, 0), 1),
                (VarKey::new(1, 2, 4), 1),
                (VarKey::new(0, 1, 1), -1),
                (VarKey::new(0, 3, 1), -1)
            ])
        );
        // B_{1,(1,2)} = Z_{1,(1,1)} Z_{1,(1,3)} Z_{2,(2,4)}^{-1}
        let alg = Arc::new(build_algebra("C2", None).unwrap());
        let ring = Ring::T(alg);
        let b = ring.root(0, si(1, 2)).unwrap();
        assert_eq!(
            b,
            Monomial::from_pairs([
                (VarKey::new(0, 1, 1), 1),
                (VarKey::new(0, 1, 3), 1),
                (VarKey::new(1, 2, 4), -1)
            ])
        );
    }

    #[test]
    fn dominance_examples() {
        let c2 = scheme("C2", Direction::Forward);
        // Y_{1,(0,0)} Y_{2,(1,0)}^{-1}: 1-dominant, not 2-dominant
        let m = Monomial::from_pairs([(VarKey::new(0, 0, 0), 1), (VarKey::new(1, 1, 0), -1)]);
        assert!(c2.i_dominant(Side::Q, &m, 0));
        assert!(!c2.i_dominant(Side::Q, &m, 1));
        // iota-collapse: Y_{1,(0,0)} Y_{1,(0,1)}^{-1} collapses to 1 on the q side
        let m = Monomial::from_pairs([(VarKey::new(0, 0, 0), 1), (VarKey::new(0, 0, 1), -1)]);
        assert!(c2.dominant(Side::Q, &m));
        assert!(!c2.dominant(Side::T, &m));
        // t-side cancellation: Y_{2,(2,2)}^{-1} Y_{2,(6,2)} is 2-dominant on t only
        let m = Monomial::from_pairs([(VarKey::new(1, 2, 2), -1), (VarKey::new(1, 6, 2), 1)]);
        assert!(c2.i_dominant(Side::T, &m, 1));
        assert!(!c2.i_dominant(Side::Q, &m, 1));
    }

    #[test]
    fn kernel_generator_shapes() {
        let c2 = scheme("C2", Direction::Forward);
        // short node: chain with coefficients 1, a, 1
        let terms = c2.kernel_generator_terms(1, si(1, 0), GenKind::Unit).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0].1, Coeff::one());
        assert_eq!(terms[1].1, Coeff::iota());
        assert_eq!(terms[2].1, Coeff::one());
        // long node: two-term string, iota-free
        let terms = c2.kernel_generator_terms(0, si(0, 0), GenKind::Unit).unwrap();
        assert_eq!(terms.len(), 2);
        assert!(terms.iter().all(|(_, c)| !c.has_iota()));
        // A_1 labels=2 at a=(0,0): Y_{1,(0,0)} + Y_{1,(4,2)}^{-1}
        let a1 = Scheme {
            alg: Arc::new(build_algebra("A1", Some(2)).unwrap()),
            dir: Direction::Forward,
        };
        let terms = a1.kernel_generator_terms(0, si(0, 0), GenKind::Unit).unwrap();
        assert_eq!(terms[1].0, Monomial::var(VarKey::new(0, 4, 2), -1));
        // reverse spread node: diamond with two iota middles
        let c2r = scheme("C2", Direction::Reverse);
        let terms = c2r.kernel_generator_terms(0, si(1, 1), GenKind::Unit).unwrap();
        assert_eq!(terms.len(), 4);
        let iotas = terms.iter().filter(|(_, c)| c.has_iota()).count();
        assert_eq!(iotas, 2);
        // iota-single is rejected on single-unit nodes
        assert!(c2.kernel_generator_terms(0, si(0, 0), GenKind::IotaSingle).is_err());
        assert!(c2r.kernel_generator_terms(1, si(0, 0), GenKind::IotaSingle).is_err());
    }
}
