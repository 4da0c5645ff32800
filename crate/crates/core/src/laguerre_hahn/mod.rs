//! The Laguerre–Hahn characterization.
//!
//! A Stieltjes series `S` is Laguerre–Hahn when
//!
//! ```text
//! A 𝔻S = B 𝔼₁S 𝔼₂S + C 𝕄S + D
//! ```
//!
//! for polynomials `A ≠ 0, B, C, D` (semi-classical when `B = 0`). This module
//! checks and solves that equation, builds the structure coefficients
//! `lₙ, πₙ, Θₙ` of the associated difference relations for `Pₙ`, `Pₙ⁽¹⁾` and
//! `qₙ`, runs the two coefficient recursions, fits Riccati data to a
//! series, and collects everything into a [`Certificate`].

mod certificate;
mod fit;
mod reconstruct;
mod recursion;
mod riccati;
mod structure;

pub use certificate::{certify, Certificate, CertifyInput, CertifyOptions, Check, Degrees, Verdict, CHECK_NAMES};
pub use structure::{
    gathered_relations, second_kind_relations, structure_coeffs_direct, verify_structure_relations, GatheredResiduals, Level,
    SecondKindResiduals, StructureCoeffs, StructureResiduals,
};
pub use fit::{fit_riccati, FitResult};
pub use reconstruct::reconstruct_riccati;
pub use recursion::{
    corollary_coefficients, corollary_step, initial_levels, magnus_data, magnus_step, telescopes, MagnusData, Telescopes,
};
pub use riccati::{riccati_residual, solve_moments_from_riccati, solve_moments_with_choices};

use crate::field::Field;
use crate::poly::Poly;
use crate::Error;

/// The polynomials `(A, B, C, D)` of a Riccati equation.
#[derive(Clone, Debug, PartialEq)]
pub struct RiccatiData<F> {
    pub a: Poly<F>,
    pub b: Poly<F>,
    pub c: Poly<F>,
    pub d: Poly<F>,
}

impl<F: Field> RiccatiData<F> {
    pub fn new(a: Poly<F>, b: Poly<F>, c: Poly<F>, d: Poly<F>) -> Result<Self, Error> {
        if a.is_zero() {
            return Err(Error::Domain("the Riccati coefficient A must be nonzero".into()));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn is_semi_classical(&self) -> bool {
        self.b.is_zero()
    }

    /// `max{deg A − 2, deg B − 2, deg C − 1}`: the degree bound on Θ̂ₙ and the
    /// highest power at which the Riccati residual can involve `S`.
    pub fn sigma(&self) -> i64 {
        (self.a.degree_or_neg() - 2)
            .max(self.b.degree_or_neg() - 2)
            .max(self.c.degree_or_neg() - 1)
    }

    pub fn scale(&self, k: &F) -> Self {
        Self { a: self.a.scale(k), b: self.b.scale(k), c: self.c.scale(k), d: self.d.scale(k) }
    }

    pub fn polys(&self) -> [&Poly<F>; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Equality up to a common nonzero factor (the equation is homogeneous).
    pub fn projectively_equal(&self, other: &Self) -> bool {
        let Some(la) = self.a.leading() else { return false };
        let Some(lb) = other.a.leading() else { return false };
        if self.a.degree() != other.a.degree() {
            return false;
        }
        let k = lb.clone() / la;
        &self.scale(&k) == other
    }

    /// Rescales so that `A` is monic.
    pub fn normalized(&self) -> Self {
        let lead = self.a.leading().cloned().unwrap_or_else(F::one);
        self.scale(&(F::one() / &lead))
    }

    pub fn max_degree(&self) -> i64 {
        self.polys().iter().map(|p| p.degree_or_neg()).max().unwrap()
    }
}

#[cfg(test)]
pub(crate) mod fixtures;
