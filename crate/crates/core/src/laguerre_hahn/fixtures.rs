//! Instances shared by the unit tests of this module.

use super::RiccatiData;
use crate::field::Rational;
use crate::lattice::Lattice;
use crate::operators::SeriesOps;
use crate::poly::Poly;
use crate::test_util::reference_conic;

pub fn reference_lattice() -> Lattice<Rational> {
    Lattice::new(reference_conic(), None).unwrap()
}

pub fn reference_ops(depth: i64) -> SeriesOps<Rational> {
    SeriesOps::new(&reference_lattice(), depth).unwrap()
}

/// `A = −1 − x − x², B = −1, C = 1, D = 1` on the reference lattice.
pub fn reference_instance() -> (RiccatiData<Rational>, Lattice<Rational>) {
    let r = RiccatiData::new(
        Poly::from_i64s(&[-1, -1, -1]),
        Poly::from_i64s(&[-1]),
        Poly::from_i64s(&[1]),
        Poly::from_i64s(&[1]),
    )
    .unwrap();
    (r, reference_lattice())
}

/// The same `A, C, D` with `B = 0`: a semi-classical instance.
pub fn semi_classical_instance() -> (RiccatiData<Rational>, Lattice<Rational>) {
    let (mut r, lat) = reference_instance();
    r.b = Poly::zero();
    (r, lat)
}
