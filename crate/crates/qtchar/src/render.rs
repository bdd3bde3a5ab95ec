//! Canonical text rendering shared by fixtures, the CLI and Display impls.
//!
//! A term line is `<coeff> ; <factor> <factor> ...` with factors sorted by
//! (node, first index, second index). Determinism guarantees elsewhere in
//! the crate are stated on this rendering.

use crate::coeff::Coeff;
use crate::monomial::Monomial;

/// Render the factors of a monomial, e.g. `Y[1,(0,0)] Y[2,(3,1)]^-1`.
/// With `single_index` the second spectral coordinate is omitted (q-ring).
pub fn render_factors(m: &Monomial, letter: &str, single_index: bool) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    let mut parts = Vec::with_capacity(m.len());
    for (k, e) in m.iter() {
        let base = if single_index {
            format!("{letter}[{},({})]", k.node + 1, k.a.q)
        } else {
            format!("{letter}[{},({},{})]", k.node + 1, k.a.q, k.a.t)
        };
        if e == 1 {
            parts.push(base);
        } else {
            parts.push(format!("{base}^{e}"));
        }
    }
    parts.join(" ")
}

pub fn render_monomial(m: &Monomial, letter: &str) -> String {
    render_factors(m, letter, false)
}

pub fn render_term(c: &Coeff, m: &Monomial, symbol: &str, letter: &str, single_index: bool) -> String {
    format!("{} ; {}", c.render(symbol), render_factors(m, letter, single_index))
}
