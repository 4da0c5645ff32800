//! The ring Q[x] ⊕ Q[x]·√r(x) for a fixed quadratic `r`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;
use crate::poly::Poly;
use crate::Error;

/// `u(x) + v(x)·√r(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurdPoly<F> {
    pub u: Poly<F>,
    pub v: Poly<F>,
    r: Poly<F>,
}

impl<F: Field> SurdPoly<F> {
    pub fn new(u: Poly<F>, v: Poly<F>, r: &Poly<F>) -> Self {
        Self { u, v, r: r.clone() }
    }

    /// Embeds a polynomial (`v = 0`).
    pub fn poly(u: Poly<F>, r: &Poly<F>) -> Self {
        Self::new(u, Poly::zero(), r)
    }

    /// `√r` itself.
    pub fn sqrt_r(r: &Poly<F>) -> Self {
        Self::new(Poly::zero(), Poly::one(), r)
    }

    pub fn zero(r: &Poly<F>) -> Self {
        Self::poly(Poly::zero(), r)
    }

    pub fn one(r: &Poly<F>) -> Self {
        Self::poly(Poly::one(), r)
    }

    pub fn radicand(&self) -> &Poly<F> {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// True when the √r-component vanishes.
    pub fn is_polynomial(&self) -> bool {
        self.v.is_zero()
    }

    /// `u − v√r`, the image under `√r ↦ −√r` (swaps the two lattice shifts).
    pub fn conj(&self) -> Self {
        Self::new(self.u.clone(), -&self.v, &self.r)
    }

    /// `(u + v√r)(u − v√r) = u² − v² r`.
    pub fn norm(&self) -> Poly<F> {
        &(&self.u * &self.u) - &(&(&self.v * &self.v) * &self.r)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.u.scale(c), self.v.scale(c), &self.r)
    }

    pub fn mul_poly(&self, p: &Poly<F>) -> Self {
        Self::new(p * &self.u, p * &self.v, &self.r)
    }

    fn check_radicand(&self, other: &Self) -> Result<(), Error> {
        if self.r == other.r {
            Ok(())
        } else {
            Err(Error::Domain("surd polynomials over different radicands".into()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        self.check_radicand(other)?;
        Ok(Self::new(&self.u + &other.u, &self.v + &other.v, &self.r))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_radicand(other)?;
        Ok(Self::new(&self.u - &other.u, &self.v - &other.v, &self.r))
    }

    /// `(u_f u_g + v_f v_g r) + (u_f v_g + u_g v_f)√r`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_radicand(other)?;
        let u = &(&self.u * &other.u) + &(&(&self.v * &other.v) * &self.r);
        let v = &(&self.u * &other.v) + &(&self.v * &other.u);
        Ok(Self::new(u, v, &self.r))
    }

    /// The unique `h` with `h·divisor = self`. Rationalizes with the conjugate
    /// and divides both components by the (polynomial) norm.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, Error> {
        self.check_radicand(divisor)?;
        if divisor.is_zero() {
            return Err(Error::Domain("division by the zero surd polynomial".into()));
        }
        let num = self.try_mul(&divisor.conj())?;
        let den = divisor.norm();
        if den.is_zero() {
            // divisor is a zero divisor, which cannot happen when r is not a square
            return Err(Error::Domain("divisor has zero norm (radicand is a perfect square?)".into()));
        }
        let u = num.u.exact_div(&den)?;
        let v = num.v.exact_div(&den)?;
        Ok(Self::new(u, v, &self.r))
    }
}

impl<F: Field> Add for &SurdPoly<F> {
    type Output = SurdPoly<F>;

    fn add(self, rhs: &SurdPoly<F>) -> SurdPoly<F> {
        self.try_add(rhs).expect("radicand mismatch")
    }
}

impl<F: Field> Sub for &SurdPoly<F> {
    type Output = SurdPoly<F>;

    fn sub(self, rhs: &SurdPoly<F>) -> SurdPoly<F> {
        self.try_sub(rhs).expect("radicand mismatch")
    }
}

impl<F: Field> Mul for &SurdPoly<F> {
    type Output = SurdPoly<F>;

    fn mul(self, rhs: &SurdPoly<F>) -> SurdPoly<F> {
        self.try_mul(rhs).expect("radicand mismatch")
    }
}

impl<F: Field> Neg for &SurdPoly<F> {
    type Output = SurdPoly<F>;

    fn neg(self) -> SurdPoly<F> {
        SurdPoly::new(-&self.u, -&self.v, &self.r)
    }
}

impl<F: Field> fmt::Display for SurdPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] + [{}]·√({})", self.u, self.v, self.r)
    }
}
