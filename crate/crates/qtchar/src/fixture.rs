//! Fixture files: hand-transcribed characters with enough header data to
//! recompute them.
//!
//! Format (UTF-8, LF): `key=value` header lines, `#` comments, then one term
//! per line `<coeff> ; <factor> <factor> ...`. Factors are `Y[i,(q,t)]`,
//! `Y[i,(q)]` (q-ring) or `Z[i,(e,t)]`, with an optional `^exp`. The
//! coefficient grammar is `<lam>`, `<mu-form>` or `<lam>(+|-)<mu-form>`
//! where a mu-form is the scheme's idempotent symbol with an optional
//! integer prefix.
//!
//! Header keys: `algebra`, `direction`, `ring` (interp | q | t |
//! interp-iotafree), `label`, `locus`, `source` (`kr:i:k:qshift:tshift` or
//! `monomial:<factors>`), optional `dims=dq,dt` (dimensions of the full
//! interpolating character; for full fixtures this must also match the
//! parsed terms).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::langlands::KRSpec;
use crate::lie::parse_algebra_id;
use crate::monomial::{Monomial, SpectralIndex, VarKey};
use crate::poly::CharPoly;
use crate::ring::{Direction, Ring, Scheme};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceSpec {
    Kr(KRSpec),
    Monomial(Monomial),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    Interp,
    Q,
    T,
    InterpIotaFree,
}

/// How the recomputed character is compared with the transcribed terms:
/// byte-exact canonical rendering, or equality in the quotient ring (used
/// where a printed diagram makes a different but equivalent choice when
/// splitting specialized multiplicities across monomials).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareMode {
    Exact,
    Quotient,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub algebra: String,
    pub direction: Direction,
    pub ring_kind: RingKind,
    pub label: String,
    pub locus: String,
    pub source: SourceSpec,
    pub dims: Option<(BigInt, BigInt)>,
    pub compare: CompareMode,
    pub poly: CharPoly,
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let mut algebra = None;
    let mut direction = Direction::Forward;
    let mut ring_kind = RingKind::Interp;
    let mut label = String::new();
    let mut locus = String::new();
    let mut source_raw: Option<String> = None;
    let mut dims = None;
    let mut compare = CompareMode::Exact;
    let mut term_lines: Vec<(usize, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.contains(';') {
            term_lines.push((lineno, line.to_string()));
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: lineno,
            reason: "expected key=value or a term line".into(),
        })?;
        match key.trim() {
            "algebra" => algebra = Some(value.trim().to_string()),
            "direction" => {
                direction = match value.trim() {
                    "forward" => Direction::Forward,
                    "reverse" => Direction::Reverse,
                    other => {
                        return Err(Error::Parse {
                            line: lineno,
                            reason: format!("unknown direction `{other}`"),
                        })
                    }
                }
            }
            "ring" => {
                ring_kind = match value.trim() {
                    "interp" => RingKind::Interp,
                    "q" => RingKind::Q,
                    "t" => RingKind::T,
                    "interp-iotafree" => RingKind::InterpIotaFree,
                    other => {
                        return Err(Error::Parse {
                            line: lineno,
                            reason: format!("unknown ring `{other}`"),
                        })
                    }
                }
            }
            "label" => label = value.trim().to_string(),
            "compare" => {
                compare = match value.trim() {
                    "exact" => CompareMode::Exact,
                    "quotient" => CompareMode::Quotient,
                    other => {
                        return Err(Error::Parse {
                            line: lineno,
                            reason: format!("unknown compare mode `{other}`"),
                        })
                    }
                }
            }
            "locus" => locus = value.trim().to_string(),
            "source" => source_raw = Some(value.trim().to_string()),
            "dims" => {
                let (a, b) = value.trim().split_once(',').ok_or_else(|| Error::Parse {
                    line: lineno,
                    reason: "dims must be `dq,dt`".into(),
                })?;
                let parse = |s: &str| {
                    s.trim().parse::<BigInt>().map_err(|_| Error::Parse {
                        line: lineno,
                        reason: format!("bad dims number `{s}`"),
                    })
                };
                dims = Some((parse(a)?, parse(b)?));
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    reason: format!("unknown header key `{other}`"),
                })
            }
        }
    }

    let algebra = algebra.ok_or(Error::Parse {
        line: 0,
        reason: "missing algebra header".into(),
    })?;
    let alg = Arc::new(parse_algebra_id(&algebra)?);
    let scheme = Scheme {
        alg: alg.clone(),
        dir: direction,
    };
    let ring = match ring_kind {
        RingKind::Interp | RingKind::InterpIotaFree => Ring::Interp(scheme.clone()),
        RingKind::Q => Ring::Q(alg.clone()),
        RingKind::T => Ring::T(alg.clone()),
    };

    if term_lines.is_empty() {
        return Err(Error::Parse {
            line: 0,
            reason: "fixture has no term lines".into(),
        });
    }
    let symbol = Ring::Interp(scheme.clone()).symbol();
    let mut poly = CharPoly::zero(ring.clone());
    for (lineno, line) in &term_lines {
        let (m, c) = parse_term(line, symbol, *lineno)?;
        if poly.terms.contains_key(&m) {
            return Err(Error::Parse {
                line: *lineno,
                reason: "duplicate monomial line".into(),
            });
        }
        poly.insert(m, c);
    }

    if ring_kind == RingKind::Interp && compare == CompareMode::Exact {
        if let Some((dq, dt)) = &dims {
            let (aq, at) = poly.dims();
            if aq != *dq || at != *dt {
                return Err(Error::DimsMismatch {
                    expected: format!("{dq},{dt}"),
                    actual: format!("{aq},{at}"),
                });
            }
        }
    }

    let source_raw = source_raw.ok_or(Error::Parse {
        line: 0,
        reason: "missing source header".into(),
    })?;
    let source = parse_source(&source_raw)?;

    Ok(Fixture {
        algebra,
        direction,
        ring_kind,
        label,
        locus,
        source,
        dims,
        compare,
        poly,
    })
}

fn parse_source(raw: &str) -> Result<SourceSpec> {
    if let Some(rest) = raw.strip_prefix("kr:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Parse {
                line: 0,
                reason: "source kr wants `kr:i:k:qshift:tshift`".into(),
            });
        }
        let num = |s: &str| {
            s.parse::<i32>().map_err(|_| Error::Parse {
                line: 0,
                reason: format!("bad kr number `{s}`"),
            })
        };
        let node = num(parts[0])? as usize;
        if node == 0 {
            return Err(Error::Parse {
                line: 0,
                reason: "kr node is 1-based".into(),
            });
        }
        Ok(SourceSpec::Kr(KRSpec {
            node: node - 1,
            length: num(parts[1])? as u32,
            shift: SpectralIndex::new(num(parts[2])?, num(parts[3])?),
        }))
    } else if let Some(rest) = raw.strip_prefix("monomial:") {
        let m = parse_factors(rest.trim(), 0)?;
        Ok(SourceSpec::Monomial(m))
    } else {
        Err(Error::Parse {
            line: 0,
            reason: format!("unknown source `{raw}`"),
        })
    }
}

fn parse_term(line: &str, symbol: &str, lineno: usize) -> Result<(Monomial, Coeff)> {
    let (coeff_part, factors_part) = line.split_once(';').ok_or(Error::Parse {
        line: lineno,
        reason: "term line needs `coeff ; factors`".into(),
    })?;
    let coeff = parse_coeff(coeff_part.trim(), symbol, lineno)?;
    let m = parse_factors(factors_part.trim(), lineno)?;
    Ok((m, coeff))
}

/// Accepts `3`, `a`, `-a`, `2a`, `1+a`, `1-2aL`, also `I` for the symbol.
fn parse_coeff(s: &str, symbol: &str, lineno: usize) -> Result<Coeff> {
    let err = |reason: String| Error::Parse {
        line: lineno,
        reason,
    };
    let parse_int = |s: &str| -> Result<BigInt> {
        s.parse::<BigInt>()
            .map_err(|_| err(format!("bad integer `{s}`")))
    };
    let sym_at = s.find(symbol).or_else(|| s.find('I'));
    let sym_len = if s.contains(symbol) {
        symbol.len()
    } else {
        1
    };
    match sym_at {
        None => Ok(Coeff {
            lam: parse_int(s)?,
            mu: BigInt::zero(),
        }),
        Some(pos) => {
            if pos + sym_len != s.len() {
                return Err(err(format!("trailing junk after idempotent in `{s}`")));
            }
            let head = &s[..pos];
            // split an optional `lam+` / `lam-` prefix from the mu multiplier
            let (lam_str, mu_str) = match head.rfind(['+', '-']) {
                Some(0) | None => ("", head),
                Some(cut) => (&head[..cut], &head[cut..]),
            };
            let lam = if lam_str.is_empty() {
                BigInt::zero()
            } else {
                parse_int(lam_str)?
            };
            let mu = match mu_str {
                "" | "+" => BigInt::from(1),
                "-" => BigInt::from(-1),
                other => parse_int(other)?,
            };
            Ok(Coeff { lam, mu })
        }
    }
}

/// `Y[1,(0,0)] Y[2,(3,1)]^-1`, `Z[1,(2,4)]`, `Y[1,(4)]`, or `1`.
pub fn parse_factors(s: &str, lineno: usize) -> Result<Monomial> {
    let err = |reason: String| Error::Parse {
        line: lineno,
        reason,
    };
    let s = s.trim();
    if s == "1" {
        return Ok(Monomial::one());
    }
    let mut m = Monomial::one();
    for tok in s.split_whitespace() {
        let rest = tok
            .strip_prefix('Y')
            .or_else(|| tok.strip_prefix('Z'))
            .ok_or_else(|| err(format!("factor `{tok}` must start with Y or Z")))?;
        let rest = rest
            .strip_prefix('[')
            .ok_or_else(|| err(format!("missing `[` in `{tok}`")))?;
        let (body, tail) = rest
            .split_once(']')
            .ok_or_else(|| err(format!("missing `]` in `{tok}`")))?;
        let exp = if tail.is_empty() {
            1
        } else {
            tail.strip_prefix('^')
                .and_then(|e| e.parse::<i32>().ok())
                .ok_or_else(|| err(format!("bad exponent in `{tok}`")))?
        };
        let (node_str, idx) = body
            .split_once(",(")
            .ok_or_else(|| err(format!("bad factor body `{body}`")))?;
        let node: usize = node_str
            .parse()
            .map_err(|_| err(format!("bad node `{node_str}`")))?;
        if node == 0 {
            return Err(err("node indices are 1-based".into()));
        }
        let idx = idx
            .strip_suffix(')')
            .ok_or_else(|| err(format!("missing `)` in `{tok}`")))?;
        let (a, b) = match idx.split_once(',') {
            Some((a, b)) => (a, b),
            None => (idx, "0"),
        };
        let q: i32 = a
            .trim()
            .parse()
            .map_err(|_| err(format!("bad index `{a}`")))?;
        let t: i32 = b
            .trim()
            .parse()
            .map_err(|_| err(format!("bad index `{b}`")))?;
        m.mul_var(VarKey::new(node - 1, q, t), exp);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# A_1 with doubled labels, the smallest diagram
algebra=A1,labels=2
direction=forward
ring=interp
label=a1r2
locus=rank-1 table
source=kr:1:1:0:0
dims=2,2
1 ; Y[1,(0,0)]
1 ; Y[1,(4,2)]^-1
";

    #[test]
    fn parse_roundtrip() {
        let f = parse_fixture(SAMPLE).unwrap();
        assert_eq!(f.poly.len(), 2);
        assert_eq!(f.label, "a1r2");
        let rendered = f.poly.render();
        assert_eq!(rendered, "1 ; Y[1,(0,0)]\n1 ; Y[1,(4,2)]^-1");
    }

    #[test]
    fn rejects_empty_and_duplicates() {
        let empty = "algebra=C2\nring=interp\nsource=kr:1:1:0:0\n";
        assert!(parse_fixture(empty).is_err());
        let dup = "algebra=C2\nsource=kr:1:1:0:0\n1 ; Y[1,(0,0)]\n2 ; Y[1,(0,0)]\n";
        assert!(parse_fixture(dup).is_err());
    }

    #[test]
    fn rejects_dims_mismatch() {
        let bad = SAMPLE.replace("dims=2,2", "dims=3,2");
        match parse_fixture(&bad) {
            Err(Error::DimsMismatch { .. }) => {}
            other => panic!("expected dims mismatch, got {other:?}"),
        }
    }

    #[test]
    fn parse_coeffs() {
        assert_eq!(parse_coeff("1", "a", 1).unwrap(), Coeff::one());
        assert_eq!(parse_coeff("a", "a", 1).unwrap(), Coeff::iota());
        assert_eq!(
            parse_coeff("1+aL", "aL", 1).unwrap(),
            Coeff {
                lam: BigInt::from(1),
                mu: BigInt::from(1)
            }
        );
        assert_eq!(
            parse_coeff("2", "b", 1).unwrap(),
            Coeff {
                lam: BigInt::from(2),
                mu: BigInt::zero()
            }
        );
        assert_eq!(
            parse_coeff("-2b", "b", 1).unwrap(),
            Coeff {
                lam: BigInt::zero(),
                mu: BigInt::from(-2)
            }
        );
        assert_eq!(
            parse_coeff("1-b", "b", 1).unwrap(),
            Coeff {
                lam: BigInt::from(1),
                mu: BigInt::from(-1)
            }
        );
    }
}
