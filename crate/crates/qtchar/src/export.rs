//! JSON and DOT exporters for computed characters.
//!
//! The JSON document is byte-stable under the canonical term order. The DOT
//! graph connects m' to m whenever their ratio is exactly one root monomial;
//! every emitted edge is rechecked against the ring's root monomial.

use serde::Serialize;

use crate::engine::CharResult;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::CharPoly;
use crate::ring::{Direction, Ring};

#[derive(Serialize)]
struct JsonExp {
    node: u32,
    q: i32,
    t: i32,
    e: i32,
}

#[derive(Serialize)]
struct JsonTerm {
    lam: i64,
    mu: i64,
    exps: Vec<JsonExp>,
}

#[derive(Serialize)]
struct JsonDims {
    q: i64,
    t: i64,
}

#[derive(Serialize)]
struct JsonChar {
    algebra: String,
    direction: String,
    highest: JsonTerm,
    terms: Vec<JsonTerm>,
    dims: JsonDims,
}

fn big_to_i64(v: &num_bigint::BigInt) -> Result<i64> {
    i64::try_from(v.clone()).map_err(|_| Error::InvalidInput("coefficient exceeds i64 in JSON export".into()))
}

/// `q` holds the q-exponent (or the eps-class in the twisted ring), `t` the
/// t-exponent, and `e` the variable's exponent.
fn term_json(_ring: &Ring, m: &Monomial, c: &crate::coeff::Coeff) -> Result<JsonTerm> {
    let exps = m
        .iter()
        .map(|(k, e)| JsonExp {
            node: k.node as u32 + 1,
            q: k.a.q,
            t: k.a.t,
            e,
        })
        .collect();
    Ok(JsonTerm {
        lam: big_to_i64(&c.lam)?,
        mu: big_to_i64(&c.mu)?,
        exps,
    })
}

pub fn export_json(c: &CharResult) -> Result<String> {
    let ring = &c.poly.ring;
    let (alg, dir) = match ring {
        Ring::Interp(s) => (
            s.alg.name.clone(),
            match s.dir {
                Direction::Forward => "forward",
                Direction::Reverse => "reverse",
            },
        ),
        Ring::Q(a) => (a.name.clone(), "q"),
        Ring::T(a) => (a.name.clone(), "t"),
    };
    let highest_coeff = c
        .poly
        .terms
        .get(&c.highest)
        .cloned()
        .unwrap_or_else(crate::coeff::Coeff::one);
    let mut terms = Vec::with_capacity(c.poly.len());
    for (m, coeff) in &c.poly.terms {
        terms.push(term_json(ring, m, coeff)?);
    }
    let doc = JsonChar {
        algebra: alg,
        direction: dir.to_string(),
        highest: term_json(ring, &c.highest, &highest_coeff)?,
        terms,
        dims: JsonDims {
            q: big_to_i64(&c.dim_q)?,
            t: big_to_i64(&c.dim_t)?,
        },
    };
    serde_json::to_string_pretty(&doc)
        .map_err(|e| Error::InvalidInput(format!("json serialization failed: {e}")))
}

/// DOT digraph with one node per term and one edge per single-root ratio.
pub fn export_dot(poly: &CharPoly) -> String {
    let letter = poly.ring.var_letter();
    let single = poly.ring.single_index();
    let name = |m: &Monomial| crate::render::render_factors(m, letter, single);
    let mut out = String::from("digraph character {\n  rankdir=TB;\n");
    for m in poly.terms.keys() {
        out.push_str(&format!("  \"{}\";\n", name(m)));
    }
    let terms: Vec<&Monomial> = poly.terms.keys().collect();
    for src in &terms {
        for dst in &terms {
            if src == dst {
                continue;
            }
            let ratio = src.div(dst);
            if let Some((i, a)) = single_root(&poly.ring, &ratio) {
                let label = match &poly.ring {
                    Ring::T(_) => format!("{}, e^{} t^{}", i + 1, a.q, a.t),
                    Ring::Q(_) => format!("{}, q^{}", i + 1, a.q),
                    Ring::Interp(_) => format!("{}, q^{} t^{}", i + 1, a.q, a.t),
                };
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                    name(src),
                    name(dst),
                    label
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Recognize a ratio as exactly one root monomial, rechecking the candidate.
fn single_root(ring: &Ring, ratio: &Monomial) -> Option<(usize, crate::monomial::SpectralIndex)> {
    for (k, e) in ratio.iter() {
        if e <= 0 {
            continue;
        }
        let i = k.node as usize;
        let a = match ring {
            Ring::Interp(s) => k.a.shift(-(s.alg.label(i) as i32), -1),
            Ring::Q(alg) => k.a.shift(-(alg.label(i) as i32), 0),
            Ring::T(alg) => k.a.shift(0, -(alg.rdual(i) as i32)),
        };
        if let Ok(root) = ring.root(i, a) {
            if root == *ratio {
                return Some((i, a));
            }
        }
    }
    None
}
