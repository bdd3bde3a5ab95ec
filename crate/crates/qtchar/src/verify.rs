//! Verification suites: fixture regression ("paper") and property checks
//! ("props"). Both return structured outcomes so the CLI and the acceptance
//! tests share one driver.

use std::path::Path;
use std::sync::Arc;

use crate::engine::{Caps, Engine};
use crate::error::{Error, Result};
use crate::fixture::{parse_fixture, CompareMode, Fixture, RingKind, SourceSpec};
use crate::langlands::kr_interp_monomial;
use crate::lie::parse_algebra_id;
use crate::poly::CharPoly;
use crate::ring::{Ring, Scheme};

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub locus: String,
    pub pass: bool,
    pub details: String,
}

impl CheckOutcome {
    pub fn pass(name: impl Into<String>, locus: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            locus: locus.into(),
            pass: true,
            details: String::new(),
        }
    }

    pub fn fail(name: impl Into<String>, locus: impl Into<String>, details: String) -> Self {
        CheckOutcome {
            name: name.into(),
            locus: locus.into(),
            pass: false,
            details,
        }
    }
}

/// Recompute a fixture's character and compare it byte-exactly (after
/// canonical rendering) with the transcribed terms.
pub fn check_fixture(fixture: &Fixture, caps: Caps) -> Result<CheckOutcome> {
    let alg = Arc::new(parse_algebra_id(&fixture.algebra)?);
    let scheme = Scheme {
        alg: alg.clone(),
        dir: fixture.direction,
    };
    let engine = Engine::new(Ring::Interp(scheme.clone()), caps);
    let m0 = match &fixture.source {
        SourceSpec::Kr(spec) => kr_interp_monomial(&scheme, spec)?,
        SourceSpec::Monomial(m) => m.clone(),
    };
    let result = engine.char_f(&m0)?;
    let computed: CharPoly = match fixture.ring_kind {
        RingKind::Interp => result.poly.clone(),
        RingKind::Q => result.poly.specialize_q()?,
        RingKind::T => result.poly.specialize_t()?,
        RingKind::InterpIotaFree => CharPoly::from_terms(
            result.poly.ring.clone(),
            result
                .poly
                .terms
                .iter()
                .filter(|(_, c)| !c.has_iota())
                .map(|(m, c)| (m.clone(), c.clone())),
        ),
    };
    let (expected, actual) = match fixture.compare {
        CompareMode::Exact => (fixture.poly.render(), computed.render()),
        CompareMode::Quotient => (
            fixture.poly.normal_form().render(),
            computed.normal_form().render(),
        ),
    };
    if expected != actual {
        return Ok(CheckOutcome::fail(
            &fixture.label,
            &fixture.locus,
            render_diff(&expected, &actual),
        ));
    }
    if let Some((dq, dt)) = &fixture.dims {
        if result.dim_q != *dq || result.dim_t != *dt {
            return Ok(CheckOutcome::fail(
                &fixture.label,
                &fixture.locus,
                format!(
                    "dims mismatch: expected ({dq},{dt}), got ({},{})",
                    result.dim_q, result.dim_t
                ),
            ));
        }
    }
    Ok(CheckOutcome::pass(&fixture.label, &fixture.locus))
}

fn render_diff(expected: &str, actual: &str) -> String {
    let mut out = String::new();
    let exp: Vec<&str> = expected.lines().collect();
    let act: Vec<&str> = actual.lines().collect();
    for line in &exp {
        if !act.contains(line) {
            out.push_str(&format!("missing: {line}\n"));
        }
    }
    for line in &act {
        if !exp.contains(line) {
            out.push_str(&format!("extra:   {line}\n"));
        }
    }
    if out.is_empty() {
        out = "line order differs".into();
    }
    out
}

/// Run every fixture under a directory (files with the `.fix` extension).
pub fn verify_paper(dir: &Path, caps: Caps) -> Result<Vec<CheckOutcome>> {
    let mut entries: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::InvalidInput(format!("cannot read fixture dir {dir:?}: {e}")))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map_or(false, |x| x == "fix"))
        .collect();
    entries.sort();
    if entries.is_empty() {
        return Err(Error::InvalidInput(format!(
            "no .fix files under {dir:?}"
        )));
    }
    let mut out = Vec::new();
    for path in entries {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {path:?}: {e}")))?;
        let fixture = parse_fixture(&text)?;
        out.push(check_fixture(&fixture, caps)?);
    }
    Ok(out)
}

/// Run the programmatic property suites.
pub fn verify_props(caps: Caps) -> Vec<CheckOutcome> {
    crate::verify_props::run_all(caps)
}
