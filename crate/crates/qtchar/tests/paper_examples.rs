//! Character computations checked against hand-transcribed diagrams.

use std::sync::Arc;

use qtchar::engine::{Caps, Engine, KernelCheck};
use qtchar::fixture::parse_factors;
use qtchar::langlands::{dual_pair_for_kr, kr_interp_monomial, KRSpec};
use qtchar::lie::parse_algebra_id;
use qtchar::poly::CharPoly;
use qtchar::ring::{Direction, Ring, Scheme};
use qtchar::{Coeff, Monomial, SpectralIndex};

fn scheme(id: &str, dir: Direction) -> Scheme {
    Scheme {
        alg: Arc::new(parse_algebra_id(id).unwrap()),
        dir,
    }
}

fn engine(s: &Scheme) -> Engine {
    Engine::new(Ring::Interp(s.clone()), Caps::default())
}

fn m(s: &str) -> Monomial {
    parse_factors(s, 0).unwrap()
}

fn assert_terms(poly: &CharPoly, expected: &[(&str, &str)]) {
    let symbol = poly.ring.symbol();
    let mut want: Vec<String> = expected
        .iter()
        .map(|(c, mono)| {
            let coeff = match *c {
                "1" => Coeff::one(),
                "I" => Coeff::iota(),
                "2" => Coeff::from_int(2),
                "1+I" => &Coeff::one() + &Coeff::iota(),
                other => panic!("unknown coefficient shorthand {other}"),
            };
            let mono = m(mono);
            qtchar::render::render_term(&coeff, &mono, symbol, poly.ring.var_letter(), poly.ring.single_index())
        })
        .collect();
    want.sort();
    let mut got: Vec<String> = poly.render().lines().map(|s| s.to_string()).collect();
    got.sort();
    assert_eq!(got, want, "term sets differ");
}

#[test]
fn a1_r1_fundamental() {
    // rank-1 base case, label 1 inside the double-laced scheme: 3 terms
    let s = scheme("A1", Direction::Forward);
    let e = engine(&s);
    let m0 = m("Y[1,(0,0)] Y[1,(2,0)]");
    let f = e.char_f(&m0).unwrap();
    assert_terms(
        &f.poly,
        &[
            ("1", "Y[1,(0,0)] Y[1,(2,0)]"),
            ("I", "Y[1,(0,0)] Y[1,(4,2)]^-1"),
            ("1", "Y[1,(2,2)]^-1 Y[1,(4,2)]^-1"),
        ],
    );
    assert_eq!(f.dim_q, 3.into());
    assert_eq!(f.dim_t, 2.into());
}

#[test]
fn a1_r2_fundamental() {
    let s = scheme("A1,labels=2", Direction::Forward);
    let e = engine(&s);
    let f = e.char_f(&m("Y[1,(0,0)]")).unwrap();
    assert_terms(
        &f.poly,
        &[("1", "Y[1,(0,0)]"), ("1", "Y[1,(4,2)]^-1")],
    );
    assert_eq!(f.dim_q, 2.into());
    assert_eq!(f.dim_t, 2.into());
}

#[test]
fn a2_r1_kr() {
    // A_2 with unit labels: the 6-term diagram of W_{1,q}
    let s = scheme("A2", Direction::Forward);
    let e = engine(&s);
    let f = e.char_f(&m("Y[1,(0,0)] Y[1,(2,0)]")).unwrap();
    assert_terms(
        &f.poly,
        &[
            ("1", "Y[1,(0,0)] Y[1,(2,0)]"),
            ("I", "Y[1,(0,0)] Y[1,(4,2)]^-1 Y[2,(3,1)]"),
            ("1", "Y[1,(2,2)]^-1 Y[1,(4,2)]^-1 Y[2,(1,1)] Y[2,(3,1)]"),
            ("I", "Y[1,(0,0)] Y[2,(5,3)]^-1"),
            ("I", "Y[1,(2,2)]^-1 Y[2,(1,1)] Y[2,(5,3)]^-1"),
            ("1", "Y[2,(3,3)]^-1 Y[2,(5,3)]^-1"),
        ],
    );
    assert_eq!(f.dim_q, 6.into());
    assert_eq!(f.dim_t, 3.into());
}

#[test]
fn a2_r2_fundamental() {
    let s = scheme("A2,labels=2", Direction::Forward);
    let e = engine(&s);
    let f = e.char_f(&m("Y[1,(0,0)]")).unwrap();
    assert_terms(
        &f.poly,
        &[
            ("1", "Y[1,(0,0)]"),
            ("1", "Y[1,(4,2)]^-1 Y[2,(2,1)]"),
            ("1", "Y[2,(6,3)]^-1"),
        ],
    );
}

#[test]
fn c2_node1_fundamental() {
    let s = scheme("C2", Direction::Forward);
    let e = engine(&s);
    let f = e.char_f(&m("Y[1,(0,0)]")).unwrap();
    assert_terms(
        &f.poly,
        &[
            ("1", "Y[1,(0,0)]"),
            ("1", "Y[1,(4,2)]^-1 Y[2,(1,1)] Y[2,(3,1)]"),
            ("I", "Y[2,(1,1)] Y[2,(5,3)]^-1"),
            ("1", "Y[1,(2,2)] Y[2,(3,3)]^-1 Y[2,(5,3)]^-1"),
            ("1", "Y[1,(6,4)]^-1"),
        ],
    );
    assert_eq!(f.dim_q, 5.into());
    assert_eq!(f.dim_t, 4.into());

    // printed q-character of the 5-dimensional fundamental representation
    let q = f.poly.specialize_q().unwrap();
    assert_terms(
        &q,
        &[
            ("1", "Y[1,(0)]"),
            ("1", "Y[1,(4)]^-1 Y[2,(1)] Y[2,(3)]"),
            ("1", "Y[2,(1)] Y[2,(5)]^-1"),
            ("1", "Y[1,(2)] Y[2,(3)]^-1 Y[2,(5)]^-1"),
            ("1", "Y[1,(6)]^-1"),
        ],
    );

    // printed twisted character of the 4-dimensional fundamental
    // representation, including the sign in Z_{1,-t^2}
    let t = f.poly.specialize_t().unwrap();
    assert_terms(
        &t,
        &[
            ("1", "Z[1,(0,0)]"),
            ("1", "Z[1,(0,2)]^-1 Z[2,(0,2)]"),
            ("1", "Z[2,(0,6)]^-1 Z[1,(2,2)]"),
            ("1", "Z[1,(2,4)]^-1"),
        ],
    );
}

#[test]
fn c2_node2_kr_length2() {
    let s = scheme("C2", Direction::Forward);
    let e = engine(&s);
    let spec = KRSpec {
        node: 1,
        length: 2,
        shift: SpectralIndex::new(1, 0),
    };
    let m0 = kr_interp_monomial(&s, &spec).unwrap();
    assert_eq!(m0, m("Y[2,(0,0)] Y[2,(2,0)]"));
    let f = e.char_f(&m0).unwrap();
    assert_terms(
        &f.poly,
        &[
            ("1", "Y[2,(0,0)] Y[2,(2,0)]"),
            ("I", "Y[2,(0,0)] Y[2,(4,2)]^-1 Y[1,(3,1)]"),
            ("1", "Y[2,(2,2)]^-1 Y[2,(4,2)]^-1 Y[1,(1,1)] Y[1,(3,1)]"),
            ("I", "Y[2,(0,0)] Y[2,(6,2)] Y[1,(7,3)]^-1"),
            ("1", "Y[1,(3,1)] Y[1,(5,3)]^-1"),
            ("1", "Y[2,(2,2)]^-1 Y[2,(6,2)] Y[1,(7,3)]^-1 Y[1,(1,1)]"),
            ("I", "Y[2,(0,0)] Y[2,(8,4)]^-1"),
            ("1", "Y[1,(5,3)]^-1 Y[1,(7,3)]^-1 Y[2,(4,2)] Y[2,(6,2)]"),
            ("I", "Y[2,(2,2)]^-1 Y[2,(8,4)]^-1 Y[1,(1,1)]"),
            ("I", "Y[1,(5,3)]^-1 Y[2,(4,2)] Y[2,(8,4)]^-1"),
            ("1", "Y[2,(6,4)]^-1 Y[2,(8,4)]^-1"),
        ],
    );
    assert_eq!(f.dim_q, 11.into());
    assert_eq!(f.dim_t, 6.into());

    // twisted character of the 6-dimensional fundamental of the dual
    let t = f.poly.specialize_t().unwrap();
    assert_terms(
        &t,
        &[
            ("1", "Z[2,(2,0)]"),
            ("1", "Z[2,(2,4)]^-1 Z[1,(3,1)] Z[1,(1,1)]"),
            ("1", "Z[1,(1,1)] Z[1,(3,3)]^-1"),
            ("1", "Z[1,(1,3)]^-1 Z[1,(3,1)]"),
            ("1", "Z[1,(3,3)]^-1 Z[1,(1,3)]^-1 Z[2,(2,4)]"),
            ("1", "Z[2,(2,8)]^-1"),
        ],
    );
}

#[test]
fn c2_in_kernel_reduction() {
    // the four-term subexpression reduces to (1 - a) Y_{1,q^7t^3}^{-1} Y_{1,qt}
    // and then to zero, inside K_{2,q,t}
    let s = scheme("C2", Direction::Forward);
    let e = engine(&s);
    let ring = Ring::Interp(s.clone());
    let one = Coeff::one();
    let iota = Coeff::iota();
    let p = CharPoly::from_terms(
        ring.clone(),
        [
            (m("Y[2,(0,0)] Y[2,(6,2)] Y[1,(7,3)]^-1"), iota.clone()),
            (
                m("Y[2,(2,2)]^-1 Y[2,(6,2)] Y[1,(7,3)]^-1 Y[1,(1,1)]"),
                one.clone(),
            ),
            (m("Y[2,(0,0)] Y[2,(8,4)]^-1"), iota.clone()),
            (m("Y[2,(2,2)]^-1 Y[2,(8,4)]^-1 Y[1,(1,1)]"), iota.clone()),
        ],
    );
    match e.in_kernel_i(&p, 1).unwrap() {
        KernelCheck::InKernel(trace) => {
            // first step subtracts the iota-block at the 2-dominant monomial
            assert_eq!(trace[0].0, m("Y[2,(0,0)] Y[2,(6,2)] Y[1,(7,3)]^-1"));
            assert_eq!(trace[0].1, iota);
            // the remainder after step one is (1 - a) times the printed monomial
            let mut work = p.clone();
            let block = e
                .rank1_block(1, &trace[0].0, true, false)
                .unwrap();
            for (mm, c, _) in block {
                work.insert(mm, -&(&iota * &c));
            }
            let printed = CharPoly::from_terms(
                ring,
                [(
                    m("Y[2,(2,2)]^-1 Y[2,(6,2)] Y[1,(7,3)]^-1 Y[1,(1,1)]"),
                    &one - &iota,
                )],
            );
            assert!(work.eq_in_ring(&printed).unwrap());
        }
        other => panic!("expected kernel membership, got {other:?}"),
    }
    // a single dominant monomial alone is not in the kernel
    let lone = CharPoly::monomial(Ring::Interp(s.clone()), m("Y[1,(0,0)]"));
    assert!(!matches!(
        e.in_kernel_i(&lone, 0).unwrap(),
        KernelCheck::InKernel(_)
    ));
}

#[test]
fn c2_dual_pair_node1() {
    let s = scheme("C2", Direction::Forward);
    let e = engine(&s);
    let pair = dual_pair_for_kr(
        &e,
        &KRSpec {
            node: 0,
            length: 1,
            shift: SpectralIndex::new(0, 0),
        },
    )
    .unwrap();
    assert!(pair.report.all_ok());
    assert_eq!(pair.report.dims.0, 5.into());
    assert_eq!(pair.report.dims.1, 4.into());
}
