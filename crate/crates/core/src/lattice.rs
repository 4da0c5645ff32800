//! Quadratic lattices given by a conic, and the operators 𝔼₁, 𝔼₂, 𝔻, 𝕄 on
//! polynomials.
//!
//! The two shifts `y₁, y₂` are the roots in `y` of
//! `â y² + 2b̂ x y + ĉ x² + 2d̂ y + 2ê x + f̂ = 0`, written `y_{1,2} = p ∓ √r`
//! with polynomials `p` (degree 1) and `r` (degree 2). On a polynomial `f`,
//! `𝔼₂f = u + v√r` is an element of [`SurdPoly`]; `𝔼₁f` is its conjugate,
//! so `𝔻f = v` and `𝕄f = u`.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::field::{format_rational, Field, Rational};
use crate::poly::Poly;
use crate::surd::SurdPoly;
use crate::Error;

/// The six conic coefficients `(â, b̂, ĉ, d̂, ê, f̂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
    pub f: Rational,
}

impl Conic {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational, e: Rational, f: Rational) -> Self {
        Self { a, b, c, d, e, f }
    }

    /// `λ = b̂² − âĉ`.
    pub fn lambda(&self) -> Rational {
        &self.b * &self.b - &self.a * &self.c
    }

    /// `τ = (λ(d̂² − âf̂) − (b̂d̂ − âê)²)/â`.
    pub fn tau(&self) -> Rational {
        let shift = &self.b * &self.d - &self.a * &self.e;
        (self.lambda() * (&self.d * &self.d - &self.a * &self.f) - &shift * &shift) / &self.a
    }

    /// `q + 1/q = 4b̂²/(âĉ) − 2`, undefined when `ĉ = 0`.
    pub fn q_trace(&self) -> Option<Rational> {
        let ac = &self.a * &self.c;
        (!ac.is_zero()).then(|| Rational::from_integer(4.into()) * &self.b * &self.b / ac - Rational::from_integer(2.into()))
    }

    pub fn classify(&self) -> Result<LatticeClass, Error> {
        if self.a.is_zero() {
            return Err(Error::InvalidConic);
        }
        Ok(LatticeClass::from_invariants(&self.lambda(), &self.tau()))
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [&self.a, &self.b, &self.c, &self.d, &self.e, &self.f]
            .iter()
            .map(|q| format_rational(q))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeClass {
    /// λ = τ = 0, forward differences.
    Linear,
    /// λ ≠ 0, τ = 0.
    QLinear,
    /// λ = 0, τ ≠ 0, Wilson-type.
    Quadratic,
    /// λτ ≠ 0, Askey–Wilson-type.
    QQuadratic,
}

impl LatticeClass {
    pub fn from_invariants(lambda: &Rational, tau: &Rational) -> Self {
        match (lambda.is_zero(), tau.is_zero()) {
            (true, true) => Self::Linear,
            (false, true) => Self::QLinear,
            (true, false) => Self::Quadratic,
            (false, false) => Self::QQuadratic,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Linear => "linear",
            Self::QLinear => "q-linear",
            Self::Quadratic => "quadratic",
            Self::QQuadratic => "q-quadratic",
        }
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which root of the conic a shift substitutes: `y₁ = p − √r` or `y₂ = p + √r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shift {
    E1,
    E2,
}

impl Shift {
    /// Sign in front of `√r`.
    pub fn sign(self) -> i64 {
        match self {
            Shift::E1 => -1,
            Shift::E2 => 1,
        }
    }

    pub fn other(self) -> Shift {
        match self {
            Shift::E1 => Shift::E2,
            Shift::E2 => Shift::E1,
        }
    }
}

/// A q-quadratic lattice over the coefficient field `F`.
#[derive(Clone, Debug)]
pub struct Lattice<F> {
    conic: Conic,
    p_rational: Poly<Rational>,
    r_rational: Poly<Rational>,
    p: Poly<F>,
    r: Poly<F>,
    lambda: Rational,
    tau: Rational,
    q_trace: Option<Rational>,
    class: LatticeClass,
    discriminant: Option<Rational>,
}

impl<F: Field> Lattice<F> {
    /// Builds the lattice and checks that `(p, r)` reproduce the conic.
    ///
    /// `discriminant` overrides the quadratic extension used for `√λ`
    /// (only meaningful for [`QuadNumber`](crate::QuadNumber) coefficients).
    pub fn new(conic: Conic, discriminant: Option<Rational>) -> Result<Self, Error> {
        let class = conic.classify()?;
        let lambda = conic.lambda();
        let tau = conic.tau();
        if class != LatticeClass::QQuadratic {
            return Err(Error::UnsupportedLatticeClass { class, lambda, tau });
        }
        let a = &conic.a;
        let p_rational = Poly::new(vec![-&conic.d / a, -&conic.b / a]);
        // r = (λ/â²)(x + (b̂d̂ − âê)/λ)² + τ/(âλ)
        let shift = (&conic.b * &conic.d - a * &conic.e) / &lambda;
        let lead = &lambda / (a * a);
        let r_rational = Poly::new(vec![
            &lead * &shift * &shift + &tau / (a * &lambda),
            &lead * &shift * Rational::from_integer(2.into()),
            lead.clone(),
        ]);
        let lat = Self {
            p: p_rational.map(F::from_rational),
            r: r_rational.map(F::from_rational),
            p_rational,
            r_rational,
            q_trace: conic.q_trace(),
            conic,
            lambda,
            tau,
            class,
            discriminant,
        };
        lat.check_conic()?;
        Ok(lat)
    }

    /// `â(y − y₁)(y − y₂)` must expand to the conic: `y₁ + y₂ = 2p = −2(b̂x + d̂)/â`
    /// and `y₁y₂ = p² − r = (ĉx² + 2êx + f̂)/â`.
    fn check_conic(&self) -> Result<(), Error> {
        let c = &self.conic;
        let two = Rational::from_integer(2.into());
        let sum = Poly::new(vec![-&two * &c.d / &c.a, -&two * &c.b / &c.a]);
        let prod = Poly::new(vec![&c.f / &c.a, &two * &c.e / &c.a, &c.c / &c.a]);
        let p = &self.p_rational;
        if p.scale(&two) != sum || &(p * p) - &self.r_rational != prod {
            return Err(Error::Domain(format!("lattice constants do not reproduce the conic {}", self.conic)));
        }
        Ok(())
    }

    pub fn conic(&self) -> &Conic {
        &self.conic
    }

    pub fn class(&self) -> LatticeClass {
        self.class
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn tau(&self) -> &Rational {
        &self.tau
    }

    pub fn q_trace(&self) -> Option<&Rational> {
        self.q_trace.as_ref()
    }

    pub fn discriminant(&self) -> Option<&Rational> {
        self.discriminant.as_ref()
    }

    /// `p = (y₁ + y₂)/2`.
    pub fn p(&self) -> &Poly<F> {
        &self.p
    }

    /// `r = ((y₂ − y₁)/2)²`.
    pub fn r(&self) -> &Poly<F> {
        &self.r
    }

    pub fn p_rational(&self) -> &Poly<Rational> {
        &self.p_rational
    }

    pub fn r_rational(&self) -> &Poly<Rational> {
        &self.r_rational
    }

    /// `Δ_y² = (y₂ − y₁)² = 4r`.
    pub fn delta_squared(&self) -> Poly<F> {
        self.r.scale(&F::from_i64(4))
    }

    /// `y₁ = p − √r` or `y₂ = p + √r`.
    pub fn root(&self, j: Shift) -> SurdPoly<F> {
        SurdPoly::new(self.p.clone(), Poly::constant(F::from_i64(j.sign())), &self.r)
    }

    /// `𝔼ⱼf = f(yⱼ)` by Horner's rule in the surd ring.
    pub fn shift(&self, f: &Poly<F>, j: Shift) -> SurdPoly<F> {
        let y = self.root(j);
        f.coeffs().iter().rev().fold(SurdPoly::zero(&self.r), |acc, c| {
            let mut next = &acc * &y;
            next.u = &next.u + &Poly::constant(c.clone());
            next
        })
    }

    /// `𝔻f = (𝔼₂f − 𝔼₁f)/(y₂ − y₁)`: the √r-component of `𝔼₂f`.
    pub fn divided_difference(&self, f: &Poly<F>) -> Poly<F> {
        self.shift(f, Shift::E2).v
    }

    /// `𝕄f = (𝔼₁f + 𝔼₂f)/2`: the polynomial component of `𝔼₂f`.
    pub fn average(&self, f: &Poly<F>) -> Poly<F> {
        self.shift(f, Shift::E2).u
    }

    /// `𝔻` and `𝕄` from one expansion.
    pub fn divided_difference_and_average(&self, f: &Poly<F>) -> (Poly<F>, Poly<F>) {
        let e2 = self.shift(f, Shift::E2);
        (e2.v, e2.u)
    }

    /// `𝕄(x − β)`.
    pub fn average_linear(&self, beta: &F) -> Poly<F> {
        &self.p - &Poly::constant(beta.clone())
    }

    /// `𝔼₁(x − β)·𝔼₂(x − β) = (p − β)² − r`.
    pub fn shift_product_linear(&self, beta: &F) -> Poly<F> {
        let m = self.average_linear(beta);
        &(&m * &m) - &self.r
    }

    /// The real roots `q, 1/q` of `q + 1/q = q_trace`, when they are real.
    pub fn q_real(&self) -> Option<(f64, f64)> {
        let t = self.q_trace.as_ref()?.to_f64()?;
        let disc = t * t - 4.0;
        (disc >= 0.0).then(|| {
            let s = disc.sqrt();
            ((t + s) / 2.0, (t - s) / 2.0)
        })
    }

    /// Floating-point half-step lattice points `x(s₀), x(s₀ + ½), x(s₀ + 1), …`
    /// obtained by iterating `x ↦ y₂(x)` from `x0`. Stops early if `r`
    /// becomes negative. Diagnostic only.
    pub fn lattice_points(&self, x0: f64, count: usize) -> Vec<f64> {
        let pf: Vec<f64> = self.p_rational.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        let rf: Vec<f64> = self.r_rational.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        let ev = |cs: &[f64], x: f64| cs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let mut out = Vec::with_capacity(count);
        let mut x = x0;
        for _ in 0..count {
            out.push(x);
            let rv = ev(&rf, x);
            if rv < 0.0 || !rv.is_finite() {
                break;
            }
            x = ev(&pf, x) + rv.sqrt();
        }
        out
    }

    /// Reinterprets the lattice over another coefficient field.
    pub fn cast<G: Field>(&self) -> Lattice<G> {
        Lattice {
            conic: self.conic.clone(),
            p: self.p_rational.map(G::from_rational),
            r: self.r_rational.map(G::from_rational),
            p_rational: self.p_rational.clone(),
            r_rational: self.r_rational.clone(),
            lambda: self.lambda.clone(),
            tau: self.tau.clone(),
            q_trace: self.q_trace.clone(),
            class: self.class,
            discriminant: self.discriminant.clone(),
        }
    }

    /// Leading coefficient of `yⱼ` at infinity, `−b̂/â ∓ √λ/|â|`, in the field.
    pub fn root_leading(&self, j: Shift) -> Result<F, Error> {
        let s = F::sqrt_rational(self.r_rational.leading().unwrap(), self.discriminant.as_ref())
            .ok_or_else(|| Error::FieldTooSmall(format!("√λ with λ = {}", format_rational(&self.lambda))))?;
        let p1 = F::from_rational(&self.p_rational.coeff(1));
        Ok(if j.sign() < 0 { p1 - s } else { p1 + s })
    }
}

/// `true` when `|λ|` is a rational square, so every lattice quantity stays
/// in Q.
pub fn has_rational_sqrt_lambda(conic: &Conic) -> bool {
    crate::field::rational_sqrt(&conic.lambda().abs()).is_some()
}
