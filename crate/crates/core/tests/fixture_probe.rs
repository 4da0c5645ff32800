//! How the fixtures were found: walk small integer (A, B, C, D) on the
//! reference lattice and keep those whose moments solve uniquely and are
//! quasi-definite.

mod common;

use common::*;
use lhsnul::laguerre_hahn::{solve_moments_from_riccati, RiccatiData};
use lhsnul::{Poly, Rational, SeriesOps, SmopData};

fn probe(ops: &SeriesOps<Rational>, r: &RiccatiData<Rational>) -> bool {
    solve_moments_from_riccati(ops, r, 10).is_ok_and(|u| SmopData::from_moments(&u, 4).is_ok())
}

#[test]
fn fixtures_are_probe_hits() {
    let ops = SeriesOps::new(&reference_lattice(), 16).unwrap();
    let mut hits = Vec::new();
    for a in [-1, 1] {
        for a1 in [-1, 0, 1] {
            for b in [-1, 0] {
                for d in [-1, 1] {
                    let r = RiccatiData::new(
                        Poly::from_i64s(&[-1, a1, a]),
                        Poly::from_i64s(&[b]),
                        Poly::from_i64s(&[1]),
                        Poly::from_i64s(&[d]),
                    )
                    .unwrap();
                    if probe(&ops, &r) {
                        hits.push(r);
                    }
                }
            }
        }
    }
    assert!(hits.contains(&lh_fixture()));
    assert!(hits.contains(&semi_classical_fixture()));
}

#[test]
fn a_constant_a_with_nothing_else_is_not_solvable() {
    let ops = SeriesOps::new(&reference_lattice(), 12).unwrap();
    let r = RiccatiData::new(Poly::from_i64s(&[1]), Poly::zero(), Poly::zero(), Poly::zero()).unwrap();
    assert!(!probe(&ops, &r));
}
