#![allow(dead_code)]

use lhsnul::laguerre_hahn::RiccatiData;
use lhsnul::{parse_rational, Conic, Field, Lattice, Poly, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

pub fn conic(cs: [&str; 6]) -> Conic {
    let [a, b, c, d, e, f] = cs.map(q);
    Conic::new(a, b, c, d, e, f)
}

pub const REFERENCE: [&str; 6] = ["1", "-5/4", "1", "0", "0", "1"];

/// q-quadratic conics whose `λ` is a rational square.
pub const RATIONAL_SQRT_LAMBDA: [[&str; 6]; 4] = [
    REFERENCE,
    ["2", "-3", "4", "1", "0", "1"],
    ["1", "-5/3", "1", "0", "0", "-1"],
    ["1", "-5/4", "1", "1/2", "-1", "2"],
];

pub fn lattice(cs: [&str; 6]) -> Lattice<Rational> {
    Lattice::new(conic(cs), None).unwrap()
}

pub fn reference_lattice() -> Lattice<Rational> {
    lattice(REFERENCE)
}

/// `A = −1 − x − x², B = −1, C = 1, D = 1`.
pub fn lh_fixture() -> RiccatiData<Rational> {
    RiccatiData::new(Poly::from_i64s(&[-1, -1, -1]), Poly::from_i64s(&[-1]), Poly::from_i64s(&[1]), Poly::from_i64s(&[1])).unwrap()
}

/// `A = −1 − x − x², B = 0, C = 1, D = 1`.
pub fn semi_classical_fixture() -> RiccatiData<Rational> {
    RiccatiData::new(Poly::from_i64s(&[-1, -1, -1]), Poly::zero(), Poly::from_i64s(&[1]), Poly::from_i64s(&[1])).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A rational with small numerator and denominator.
pub fn small_rational(rng: &mut StdRng) -> Rational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=5);
    Rational::from_i64(num) / &Rational::from_i64(den)
}

pub fn nonzero_rational(rng: &mut StdRng) -> Rational {
    let num: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den: i64 = rng.gen_range(1..=5);
    Rational::from_i64(num) / &Rational::from_i64(den)
}

/// A polynomial of exact degree `deg`.
pub fn poly_of_degree(rng: &mut StdRng, deg: usize) -> Poly<Rational> {
    let mut cs: Vec<Rational> = (0..deg).map(|_| small_rational(rng)).collect();
    cs.push(nonzero_rational(rng));
    Poly::new(cs)
}

pub fn random_poly(rng: &mut StdRng, max_deg: usize) -> Poly<Rational> {
    let deg = rng.gen_range(0..=max_deg);
    poly_of_degree(rng, deg)
}
