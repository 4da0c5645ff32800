//! Truncated Laurent series in descending powers of `x`.
//!
//! A series knows its coefficients exactly down to a floor power; anything
//! below the floor is unknown (not zero). Every operation recomputes the
//! floor from the floors and leading powers of its operands, so a result
//! never claims coefficients the arithmetic has not determined. Series built
//! from polynomials carry no floor at all.

use std::fmt;

use crate::field::{Field, Rational};
use crate::poly::Poly;
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<F> {
    /// Power of `coeffs[0]`; meaningless when `coeffs` is empty.
    top: i64,
    /// Coefficients of `x^top, x^(top-1), …`; first entry nonzero, last entry
    /// nonzero. Missing entries down to the floor are zero.
    coeffs: Vec<F>,
    /// Lowest known power; `None` when the series is exact.
    floor: Option<i64>,
}

/// `max` where `None` stands for −∞.
fn max_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<F: Field> LaurentSeries<F> {
    /// Builds a series from the coefficients of `x^top, x^(top-1), …`.
    pub fn new(top: i64, coeffs: Vec<F>, floor: Option<i64>) -> Self {
        let mut s = Self { top, coeffs, floor };
        s.normalize();
        s
    }

    pub fn zero() -> Self {
        Self { top: 0, coeffs: Vec::new(), floor: None }
    }

    pub fn one() -> Self {
        Self::monomial(F::one(), 0)
    }

    /// Exact `c x^k`.
    pub fn monomial(c: F, k: i64) -> Self {
        Self::new(k, vec![c], None)
    }

    pub fn from_poly(p: &Poly<F>) -> Self {
        let top = p.degree().map_or(0, |d| d as i64);
        Self::new(top, p.coeffs().iter().rev().cloned().collect(), None)
    }

    /// `S(x) = Σ uₙ x^{-n-1}`, known down to `x^{-len}`.
    pub fn stieltjes(moments: &[F]) -> Self {
        Self::new(-1, moments.to_vec(), Some(-(moments.len() as i64)))
    }

    fn normalize(&mut self) {
        if let Some(f) = self.floor {
            let keep = (self.top - f + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => self.coeffs.clear(),
            Some(i) => {
                self.coeffs.drain(..i);
                self.top -= i as i64;
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
        if self.coeffs.is_empty() {
            self.top = self.floor.map_or(0, |f| f - 1);
        }
    }

    /// Lowest power whose coefficient is known (`None`: exact series).
    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    /// The `N` of "known through `x^{-N}`" (`None`: exact series).
    pub fn truncation_order(&self) -> Option<i64> {
        self.floor.map(|f| -f)
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero_in_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Power of the leading known nonzero coefficient.
    pub fn leading_power(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.top)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.coeffs.first()
    }

    /// Upper bound on the power of the leading term, `None` for exact zero.
    fn top_bound(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.floor.map(|f| f - 1)
        } else {
            Some(self.top)
        }
    }

    /// Coefficient of `x^k`, or `None` when it is below the floor.
    pub fn coeff(&self, k: i64) -> Option<F> {
        if self.floor.is_some_and(|f| k < f) {
            return None;
        }
        if self.coeffs.is_empty() || k > self.top {
            return Some(F::zero());
        }
        Some(self.coeffs.get((self.top - k) as usize).cloned().unwrap_or_else(F::zero))
    }

    /// Like [`coeff`](Self::coeff) but reports the missing window.
    pub fn coeff_checked(&self, k: i64) -> Result<F, Error> {
        self.coeff(k).ok_or(Error::InsufficientTruncation {
            required: -k,
            available: self.truncation_order().unwrap_or(i64::MAX),
        })
    }

    /// Known nonzero coefficients as `(power, value)` pairs, descending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.top - i as i64, c))
    }

    /// First nonzero known coefficient, if any.
    pub fn first_nonzero(&self) -> Option<(i64, F)> {
        self.coeffs.first().map(|c| (self.top, c.clone()))
    }

    /// Forgets every coefficient below `floor`.
    pub fn truncate(&self, floor: i64) -> Self {
        Self::new(self.top, self.coeffs.clone(), max_floor(self.floor, Some(floor)))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.top, self.coeffs.iter().map(|a| a.clone() * c).collect(), self.floor)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.top, self.coeffs.iter().map(|a| -a.clone()).collect(), self.floor)
    }

    fn combine(&self, other: &Self, sub: bool) -> Self {
        let floor = max_floor(self.floor, other.floor);
        let (hi, lo) = match (self.top_bound(), other.top_bound()) {
            (None, None) => return Self { top: 0, coeffs: vec![], floor },
            (a, b) => {
                let hi = a.unwrap_or(i64::MIN).max(b.unwrap_or(i64::MIN));
                let low_of = |s: &Self| s.top - s.coeffs.len() as i64 + 1;
                let mut lo = i64::MAX;
                if !self.coeffs.is_empty() {
                    lo = lo.min(low_of(self));
                }
                if !other.coeffs.is_empty() {
                    lo = lo.min(low_of(other));
                }
                (hi, lo.max(floor.unwrap_or(i64::MIN)))
            }
        };
        if lo > hi {
            return Self::new(hi, vec![], floor);
        }
        let coeffs = (lo..=hi)
            .rev()
            .map(|k| {
                let a = self.raw(k);
                let b = other.raw(k);
                if sub {
                    a - &b
                } else {
                    a + &b
                }
            })
            .collect();
        Self::new(hi, coeffs, floor)
    }

    /// Stored coefficient without window checks.
    fn raw(&self, k: i64) -> F {
        if self.coeffs.is_empty() || k > self.top {
            return F::zero();
        }
        self.coeffs.get((self.top - k) as usize).cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    /// Cauchy product. The floor is the highest power any unknown
    /// coefficient of either factor can reach.
    pub fn mul(&self, other: &Self) -> Self {
        let floor = max_floor(
            self.floor.zip(other.top_bound()).map(|(f, t)| f + t),
            other.floor.zip(self.top_bound()).map(|(f, t)| f + t),
        );
        // an exact zero factor annihilates the unknown tail of the other one
        let floor = if (self.coeffs.is_empty() && self.floor.is_none())
            || (other.coeffs.is_empty() && other.floor.is_none())
        {
            None
        } else {
            floor
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(0, vec![], floor);
        }
        let top = self.top + other.top;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = match floor {
            Some(f) => ((top - f + 1).max(0) as usize).min(full),
            None => full,
        };
        let mut out = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        Self::new(top, out, floor)
    }

    pub fn mul_poly(&self, p: &Poly<F>) -> Self {
        self.mul(&Self::from_poly(p))
    }

    /// Multiplicative inverse, computed down to `max(natural floor, min_floor)`.
    pub fn inverse(&self, min_floor: i64) -> Result<Self, Error> {
        let (Some(lead), Some(a)) = (self.coeffs.first(), self.leading_power()) else {
            return Err(Error::Domain("inverse of a series with no known nonzero coefficient".into()));
        };
        let natural = self.floor.map(|f| f - 2 * a);
        let floor = max_floor(natural, Some(min_floor)).unwrap();
        let top = -a;
        let len = (top - floor + 1).max(0) as usize;
        let mut out: Vec<F> = Vec::with_capacity(len);
        for idx in 0..len {
            // coefficient of x^(top - idx): sum_{i+j=idx} f[i] g[j] = δ_{idx,0}
            let mut acc = if idx == 0 { F::one() } else { F::zero() };
            for i in 1..=idx.min(self.coeffs.len().saturating_sub(1)) {
                let fi = &self.coeffs[i];
                if !fi.is_zero() {
                    acc = acc - &(fi.clone() * &out[idx - i]);
                }
            }
            out.push(acc / lead);
        }
        Ok(Self::new(top, out, Some(floor)))
    }

    /// `self / other`, see [`inverse`](Self::inverse).
    pub fn div(&self, other: &Self, min_floor: i64) -> Result<Self, Error> {
        Ok(self.mul(&other.inverse(min_floor)?))
    }

    /// True when `self − other` vanishes on every coefficient both know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero_in_window()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> LaurentSeries<G> {
        LaurentSeries::new(self.top, self.coeffs.iter().map(f).collect(), self.floor)
    }
}

/// Expansion of `√r` at infinity for quadratic `r`, known down to `x^{-n}`.
/// The leading coefficient is the positive root of `lc(r)`.
pub fn sqrt_series<F: Field>(
    r: &Poly<Rational>,
    n: i64,
    discriminant: Option<&Rational>,
) -> Result<LaurentSeries<F>, Error> {
    if r.degree() != Some(2) {
        return Err(Error::Domain(format!("sqrt_series needs a quadratic, got degree {:?}", r.degree())));
    }
    let lead = r.leading().unwrap();
    let s1 = F::sqrt_rational(lead, discriminant).ok_or_else(|| Error::FieldTooSmall(format!(
        "√({}) is not in the coefficient field; set the discriminant to the lattice λ",
        crate::field::format_rational(lead)
    )))?;
    let rc = |m: i64| -> F {
        if (0..=2).contains(&m) {
            F::from_rational(&r.coeff(m as usize))
        } else {
            F::zero()
        }
    };
    let two_s1 = s1.clone() + &s1;
    // s[i] is the coefficient of x^(1 - i)
    let len = (1 - (-n) + 1).max(1) as usize;
    let mut s: Vec<F> = vec![s1];
    for idx in 1..len {
        // match x^m with m = 2 - idx: 2 s_1 s_{idx} + Σ_{i+j=idx, 0<i,j<idx} s_i s_j = r_m
        let m = 2 - idx as i64;
        let mut acc = rc(m);
        for i in 1..idx {
            acc = acc - &(s[i].clone() * &s[idx - i]);
        }
        s.push(acc / &two_s1);
    }
    Ok(LaurentSeries::new(1, s, Some(-n)))
}

impl<F: Field> fmt::Display for LaurentSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})x^{k}")?;
        }
        if first {
            f.write_str("0")?;
        }
        if let Some(fl) = self.floor {
            write!(f, " + O(x^{})", fl - 1)?;
        }
        Ok(())
    }
}
