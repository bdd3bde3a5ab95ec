//! Dual-pair construction, tensor multiplicativity and the ordinary
//! character duality on concrete pairs.

use std::sync::Arc;

use num_bigint::BigInt;
use qtchar::engine::{Caps, Engine};
use qtchar::langlands::{
    dims_report, dual_pair_for_kr, kr_interp_monomial, ordinary_duality_check, tensor_dual, KRSpec,
};
use qtchar::lie::parse_algebra_id;
use qtchar::ring::{Direction, Ring, Scheme};
use qtchar::SpectralIndex;

fn scheme(id: &str, dir: Direction) -> Scheme {
    Scheme {
        alg: Arc::new(parse_algebra_id(id).unwrap()),
        dir,
    }
}

fn engine(s: &Scheme) -> Engine {
    Engine::new(Ring::Interp(s.clone()), Caps::default())
}

#[test]
fn kr_monomials_and_length_validation() {
    let s = scheme("C2", Direction::Forward);
    // long node, length 2: q_i^2-spaced string
    let m = kr_interp_monomial(
        &s,
        &KRSpec {
            node: 0,
            length: 2,
            shift: SpectralIndex::new(0, 0),
        },
    )
    .unwrap();
    assert_eq!(
        m,
        qtchar::fixture::parse_factors("Y[1,(0,0)] Y[1,(4,2)]", 0).unwrap()
    );
    // short node demands a length divisible by the lacing number
    assert!(kr_interp_monomial(
        &s,
        &KRSpec {
            node: 1,
            length: 1,
            shift: SpectralIndex::new(0, 0)
        }
    )
    .is_err());
    assert!(kr_interp_monomial(
        &s,
        &KRSpec {
            node: 1,
            length: 0,
            shift: SpectralIndex::new(0, 0)
        }
    )
    .is_err());
}

#[test]
fn c2_pair_and_surplus_is_trivial_character() {
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
    let report = ordinary_duality_check(&s.alg, &pair).unwrap();
    assert!(report.dominates);
    assert!(report.highest_match);
    // 5 = 4 + 1: the surplus is the trivial character
    assert_eq!(report.surplus, vec![(vec![0, 0], BigInt::from(1))]);

    // doubled-label A1: equality, empty surplus
    let a1 = scheme("A1,labels=2", Direction::Forward);
    let pair = dual_pair_for_kr(
        &engine(&a1),
        &KRSpec {
            node: 0,
            length: 1,
            shift: SpectralIndex::new(0, 0),
        },
    )
    .unwrap();
    let report = ordinary_duality_check(&a1.alg, &pair).unwrap();
    assert!(report.dominates && report.highest_match);
    assert!(report.surplus.is_empty());
}

#[test]
fn tensor_duals_multiply() {
    let s = scheme("C2", Direction::Forward);
    let e = engine(&s);
    let p1 = dual_pair_for_kr(
        &e,
        &KRSpec {
            node: 0,
            length: 1,
            shift: SpectralIndex::new(0, 0),
        },
    )
    .unwrap();
    let p2 = dual_pair_for_kr(
        &e,
        &KRSpec {
            node: 0,
            length: 1,
            shift: SpectralIndex::new(7, 5),
        },
    )
    .unwrap();
    let product = tensor_dual(&e, &[p1.clone(), p2]).unwrap();
    assert_eq!(product.report.dims.0, BigInt::from(25));
    assert_eq!(product.report.dims.1, BigInt::from(16));
    let single = tensor_dual(&e, &[p1.clone()]).unwrap();
    assert_eq!(single.report.dims, p1.report.dims);
    let report = dims_report(&product.interp);
    assert_eq!(report.dim_q, BigInt::from(25));
    assert_eq!(report.iota_free, BigInt::from(16));
}

#[test]
fn reverse_pair_reports() {
    let s = scheme("G2", Direction::Reverse);
    let e = engine(&s);
    let pair = dual_pair_for_kr(
        &e,
        &KRSpec {
            node: 1,
            length: 1,
            shift: SpectralIndex::new(0, 0),
        },
    )
    .unwrap();
    assert_eq!(pair.report.dims.0, BigInt::from(29));
    assert_eq!(pair.report.dims.1, BigInt::from(7));
    assert!(pair.report.source_minuscule);
    assert!(pair.report.dual_minuscule);
    assert!(pair.report.dual_is_kr);
}

#[test]
fn ring_mismatch_is_rejected() {
    let a = scheme("A1", Direction::Forward);
    let c = scheme("C2", Direction::Forward);
    let pa = qtchar::CharPoly::monomial(Ring::Interp(a), qtchar::Monomial::one());
    let pc = qtchar::CharPoly::monomial(Ring::Interp(c), qtchar::Monomial::one());
    assert!(pa.add(&pc).is_err());
    assert!(pa.mul(&pc).is_err());
}
