//! 𝔼₁, 𝔼₂, 𝔻 and 𝕄 acting on Laurent series at infinity.
//!
//! `𝔼ⱼS` substitutes `yⱼ = p ∓ √r` into `S`. Negative powers use the expansion
//! of `wⱼ = 1/yⱼ`, whose powers are cached once; the polynomial part of `S` goes
//! through the exact surd expansion of [`Lattice::shift`] and only picks up
//! truncation when `√r` is replaced by its series.

use crate::field::Field;
use crate::lattice::{Lattice, Shift};
use crate::poly::Poly;
use crate::series::{sqrt_series, LaurentSeries};
use crate::surd::SurdPoly;
use crate::Error;

/// Precomputed series data for a lattice at a fixed working depth.
#[derive(Clone, Debug)]
pub struct SeriesOps<F> {
    lattice: Lattice<F>,
    depth: i64,
    sqrt_r: LaurentSeries<F>,
    inv_delta: LaurentSeries<F>,
    /// `inv_root_powers[j][m] = wⱼ^m`.
    inv_root_powers: [Vec<LaurentSeries<F>>; 2],
}

fn idx(j: Shift) -> usize {
    match j {
        Shift::E1 => 0,
        Shift::E2 => 1,
    }
}

impl<F: Field> SeriesOps<F> {
    /// Expands `√r` down to `x^{-depth}`. Results of the operators are then
    /// known down to roughly `x^{-depth-2}`, or less if the input series is
    /// shorter; every result carries its own floor.
    pub fn new(lattice: &Lattice<F>, depth: i64) -> Result<Self, Error> {
        let sqrt_r: LaurentSeries<F> = sqrt_series(lattice.r_rational(), depth, lattice.discriminant())?;
        let p = LaurentSeries::from_poly(lattice.p());
        let mut inv_root_powers: [Vec<LaurentSeries<F>>; 2] = [Vec::new(), Vec::new()];
        for j in [Shift::E1, Shift::E2] {
            let y = if j == Shift::E1 { p.sub(&sqrt_r) } else { p.add(&sqrt_r) };
            if y.leading_power() != Some(1) {
                return Err(Error::DegenerateLattice(format!(
                    "the root {} has no linear term at infinity (ĉ = 0?)",
                    if j == Shift::E1 { "y₁" } else { "y₂" }
                )));
            }
            let w = y.inverse(-depth - 2)?;
            let mut pows = vec![LaurentSeries::one(), w.clone()];
            for _ in 2..=depth + 2 {
                let next = pows.last().unwrap().mul(&w);
                pows.push(next);
            }
            inv_root_powers[idx(j)] = pows;
        }
        let inv_delta = sqrt_r.scale(&F::from_i64(2)).inverse(-depth - 2)?;
        Ok(Self { lattice: lattice.clone(), depth, sqrt_r, inv_delta, inv_root_powers })
    }

    pub fn lattice(&self) -> &Lattice<F> {
        &self.lattice
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    /// `√r` as a series.
    pub fn sqrt_r(&self) -> &LaurentSeries<F> {
        &self.sqrt_r
    }

    /// `1/Δ_y = 1/(2√r)`.
    pub fn inv_delta(&self) -> &LaurentSeries<F> {
        &self.inv_delta
    }

    /// `u + v√r` with `√r` replaced by its expansion.
    pub fn surd_to_series(&self, s: &SurdPoly<F>) -> LaurentSeries<F> {
        let u = LaurentSeries::from_poly(&s.u);
        if s.v.is_zero() {
            return u;
        }
        u.add(&self.sqrt_r.mul_poly(&s.v))
    }

    fn inv_root_power(&self, j: Shift, m: usize) -> LaurentSeries<F> {
        let pows = &self.inv_root_powers[idx(j)];
        if m < pows.len() {
            return pows[m].clone();
        }
        let mut acc = pows.last().unwrap().clone();
        for _ in pows.len()..=m {
            acc = acc.mul(&pows[1]);
        }
        acc
    }

    /// `𝔼ⱼS = S(yⱼ)`.
    pub fn shift(&self, s: &LaurentSeries<F>, j: Shift) -> LaurentSeries<F> {
        let mut poly_part = Vec::new();
        let mut out = LaurentSeries::zero();
        for (k, c) in s.terms() {
            if k >= 0 {
                let k = k as usize;
                if poly_part.len() <= k {
                    poly_part.resize(k + 1, F::zero());
                }
                poly_part[k] = c.clone();
            } else {
                out = out.add(&self.inv_root_power(j, (-k) as usize).scale(c));
            }
        }
        if !poly_part.is_empty() {
            let e = self.lattice.shift(&Poly::new(poly_part), j);
            out = out.add(&self.surd_to_series(&e));
        }
        // 𝔼ⱼ(x^k) starts at x^k, so unknown coefficients of S stay below its floor
        match s.floor() {
            Some(f) => out.truncate(f),
            None => out,
        }
    }

    /// `(𝔼₁S, 𝔼₂S)`.
    pub fn shifts(&self, s: &LaurentSeries<F>) -> (LaurentSeries<F>, LaurentSeries<F>) {
        (self.shift(s, Shift::E1), self.shift(s, Shift::E2))
    }

    /// `𝔻S = (𝔼₂S − 𝔼₁S)/(2√r)`.
    pub fn divided_difference(&self, s: &LaurentSeries<F>) -> LaurentSeries<F> {
        let (e1, e2) = self.shifts(s);
        e2.sub(&e1).mul(&self.inv_delta)
    }

    /// `𝕄S = (𝔼₁S + 𝔼₂S)/2`.
    pub fn average(&self, s: &LaurentSeries<F>) -> LaurentSeries<F> {
        let (e1, e2) = self.shifts(s);
        e1.add(&e2).scale(&(F::one() / &F::from_i64(2)))
    }

    /// `(𝔼₁S, 𝔼₂S, 𝔻S, 𝕄S)` from one pair of compositions.
    pub fn all(&self, s: &LaurentSeries<F>) -> ShiftedSeries<F> {
        let (e1, e2) = self.shifts(s);
        let d = e2.sub(&e1).mul(&self.inv_delta);
        let m = e1.add(&e2).scale(&(F::one() / &F::from_i64(2)));
        ShiftedSeries { e1, e2, d, m }
    }
}

/// The four operator images of one series.
#[derive(Clone, Debug)]
pub struct ShiftedSeries<F> {
    pub e1: LaurentSeries<F>,
    pub e2: LaurentSeries<F>,
    pub d: LaurentSeries<F>,
    pub m: LaurentSeries<F>,
}
