//! Exact Laguerre–Hahn machinery on quadratic non-uniform lattices.
//!
//! The crate is layered:
//!
//! * [`field`], [`poly`], [`surd`], [`series`] — exact coefficient arithmetic:
//!   rationals, the quadratic field Q(√d), dense polynomials, the ring
//!   `Q[x] ⊕ Q[x]√r` and truncated Laurent series at infinity.
//! * [`lattice`], [`operators`] — conic lattices and the operators
//!   𝔼₁, 𝔼₂, 𝔻, 𝕄 on polynomials and on series.
//! * [`orthopoly`] — moments, recurrence coefficients, monic orthogonal
//!   polynomials, associated polynomials and functions of the second kind.
//! * [`laguerre_hahn`] — the Riccati equation, structure relations,
//!   coefficient recursions, fitting and certificates.
//!
//! Everything is generic over a coefficient [`Field`]; the aliases at the
//! bottom of this file fix the two exact choices used in practice.

pub mod field;
pub mod laguerre_hahn;
pub mod lattice;
pub mod linalg;
pub mod operators;
pub mod orthopoly;
pub mod poly;
pub mod series;
pub mod surd;

pub use field::{format_rational, parse_rational, Field, QuadNumber, Rational};
pub use lattice::{Conic, Lattice, LatticeClass, Shift};
pub use operators::SeriesOps;
pub use orthopoly::SmopData;
pub use poly::Poly;
pub use series::{sqrt_series, LaurentSeries};
pub use surd::SurdPoly;

/// Everything that can go wrong. Mathematical failures (a relation that
/// does not hold) are usually reported as data, not as errors; these are the
/// cases where a computation cannot proceed.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid conic: the coefficient â must be nonzero")]
    InvalidConic,
    #[error("unsupported lattice class {class} (λ = {}, τ = {}); only λτ ≠ 0 is handled", format_rational(.lambda), format_rational(.tau))]
    UnsupportedLatticeClass { class: LatticeClass, lambda: Rational, tau: Rational },
    #[error("degenerate lattice: {0}")]
    DegenerateLattice(String),
    #[error("coefficient field too small: {0}")]
    FieldTooSmall(String),
    #[error("polynomial division is not exact")]
    DivisionNotExact,
    #[error("invalid recurrence: γ_{n} = 0")]
    InvalidRecurrence { n: usize },
    #[error("moments are not quasi-definite at n = {n}: the {0}×{0} Hankel determinant vanishes", .n + 1)]
    NotQuasiDefinite { n: usize },
    #[error("insufficient truncation: need coefficients down to x^-{required}, known only down to x^-{available}")]
    InsufficientTruncation { required: i64, available: i64 },
    #[error("Riccati equation inconsistent at moment u_{k}")]
    Inconsistent { k: usize },
    #[error("Riccati equation leaves moment u_{k} free")]
    FreeParameter { k: usize },
    #[error("not Laguerre–Hahn: structure relation fails at n = {n}: {reason}")]
    NotLaguerreHahn { n: usize, reason: String },
    #[error("degree bound exceeded at n = {n}: degree {degree} > {bound}")]
    DegreeBoundExceeded { n: usize, degree: i64, bound: i64 },
    #[error("reconstruction underdetermined: {0}")]
    Underdetermined(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub type QPoly = Poly<Rational>;
pub type KPoly = Poly<QuadNumber>;
pub type QSurd = SurdPoly<Rational>;
pub type KSurd = SurdPoly<QuadNumber>;
pub type QSeries = LaurentSeries<Rational>;
pub type KSeries = LaurentSeries<QuadNumber>;
pub type QLattice = Lattice<Rational>;
pub type KLattice = Lattice<QuadNumber>;

#[cfg(test)]
pub(crate) mod test_util {
    use crate::{parse_rational, Conic, Rational};

    pub fn rat(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    /// `y² − (5/2)xy + x² + 1 = 0`, q = 4.
    pub fn reference_conic() -> Conic {
        Conic::new(rat("1"), rat("-5/4"), rat("1"), rat("0"), rat("0"), rat("1"))
    }
}
