//! Monic orthogonal polynomials from moments or from a three-term recurrence.
//!
//! Conventions: `γ₀ = u₀ = 1`,
//! `Pₙ₊₁ = (x − βₙ)Pₙ − γₙPₙ₋₁` with `P₋₁ = 0, P₀ = 1`, the associated
//! polynomials `Pₙ₊₁⁽¹⁾ = (x − βₙ₊₁)Pₙ⁽¹⁾ − γₙ₊₁Pₙ₋₁⁽¹⁾` with `P₋₁⁽¹⁾ = 0,
//! P₀⁽¹⁾ = 1`, and the functions of the second kind `qₙ = PₙS − Pₙ₋₁⁽¹⁾`
//! with `q₋₁ = 1, q₀ = S`.

use crate::field::Field;
use crate::poly::Poly;
use crate::series::LaurentSeries;
use crate::Error;

/// Moments, recurrence coefficients and the polynomial families through
/// degree `n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmopData<F> {
    pub moments: Vec<F>,
    pub beta: Vec<F>,
    pub gamma: Vec<F>,
    p: Vec<Poly<F>>,
    p1: Vec<Poly<F>>,
    n_max: usize,
}

impl<F: Field> SmopData<F> {
    /// Builds `P₀…P_{n_max}` and `P₀⁽¹⁾…P_{n_max}⁽¹⁾` from `β₀…β_{n_max}`
    /// and `γ₀…γ_{n_max}`, and the moments `u₀…u_{2n_max+1}`.
    pub fn from_recurrence(beta: &[F], gamma: &[F], n_max: usize) -> Result<Self, Error> {
        check_recurrence(beta, gamma, n_max)?;
        let beta = beta[..=n_max].to_vec();
        let gamma = gamma[..=n_max].to_vec();
        let x = Poly::<F>::x();
        let mut p = vec![Poly::one()];
        let mut p1 = vec![Poly::one()];
        for n in 0..n_max {
            let prev = if n == 0 { Poly::zero() } else { p[n - 1].clone() };
            let next = &(&(&x - &Poly::constant(beta[n].clone())) * &p[n]) - &prev.scale(&gamma[n]);
            p.push(next);
            let prev1 = if n == 0 { Poly::zero() } else { p1[n - 1].clone() };
            let next1 = &(&(&x - &Poly::constant(beta[n + 1].clone())) * &p1[n]) - &prev1.scale(&gamma[n + 1]);
            p1.push(next1);
        }
        let moments = moments_from_recurrence(&beta, &gamma, 2 * n_max + 1)?;
        Ok(Self { moments, beta, gamma, p, p1, n_max })
    }

    /// Runs [`recurrence_from_moments`] first; needs `u₀…u_{2n_max+1}`.
    pub fn from_moments(moments: &[F], n_max: usize) -> Result<Self, Error> {
        let (beta, gamma) = recurrence_from_moments(moments, n_max)?;
        let mut data = Self::from_recurrence(&beta, &gamma, n_max)?;
        data.moments = moments.to_vec();
        Ok(data)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `Pₙ`, with `P₋₁ = 0`.
    pub fn p(&self, n: i64) -> Poly<F> {
        if n < 0 {
            Poly::zero()
        } else {
            self.p[n as usize].clone()
        }
    }

    /// `Pₙ⁽¹⁾`, with `P₋₁⁽¹⁾ = 0`.
    pub fn p1(&self, n: i64) -> Poly<F> {
        if n < 0 {
            Poly::zero()
        } else {
            self.p1[n as usize].clone()
        }
    }

    pub fn polys(&self) -> &[Poly<F>] {
        &self.p
    }

    pub fn assoc_polys(&self) -> &[Poly<F>] {
        &self.p1
    }

    /// `Πₖ₌₀ⁿ γₖ`.
    pub fn gamma_product(&self, n: usize) -> F {
        self.gamma[..=n].iter().fold(F::one(), |acc, g| acc * g)
    }

    /// The Stieltjes series of the stored moments.
    pub fn stieltjes(&self) -> LaurentSeries<F> {
        LaurentSeries::stieltjes(&self.moments)
    }
}

fn check_recurrence<F: Field>(beta: &[F], gamma: &[F], n_max: usize) -> Result<(), Error> {
    if beta.len() <= n_max || gamma.len() <= n_max {
        return Err(Error::Domain(format!(
            "recurrence needs β₀…β_{n_max} and γ₀…γ_{n_max}, got {} and {} values",
            beta.len(),
            gamma.len()
        )));
    }
    if !gamma[0].is_one() {
        return Err(Error::Domain("γ₀ must equal 1".into()));
    }
    if let Some(n) = gamma[..=n_max].iter().position(|g| g.is_zero()) {
        return Err(Error::InvalidRecurrence { n });
    }
    Ok(())
}

/// `u₀…u_order`: `u_k` is the `(0, 0)` entry of `J^k` for the tridiagonal
/// Jacobi operator `J` with diagonal `β` and off-diagonal products `γ`.
pub fn moments_from_recurrence<F: Field>(beta: &[F], gamma: &[F], order: usize) -> Result<Vec<F>, Error> {
    let need = order / 2 + 1;
    if beta.len() < need.min(order.div_ceil(2)) || gamma.len() < need {
        return Err(Error::Domain(format!("order {order} needs more recurrence coefficients")));
    }
    // c is the coordinate vector of x^k in the basis Pₙ; u_k = c₀
    let mut c = vec![F::one()];
    let mut out = vec![F::one()];
    for _ in 0..order {
        let mut next = vec![F::zero(); c.len() + 1];
        for (n, cn) in c.iter().enumerate() {
            if cn.is_zero() {
                continue;
            }
            next[n + 1] = next[n + 1].clone() + cn;
            if let Some(b) = beta.get(n) {
                next[n] = next[n].clone() + &(cn.clone() * b);
            }
            if let Some(g) = gamma.get(n).filter(|_| n > 0) {
                next[n - 1] = next[n - 1].clone() + &(cn.clone() * g);
            }
        }
        // components above order/2 can no longer reach index 0 in time
        next.truncate(need + 1);
        c = next;
        out.push(c[0].clone());
    }
    Ok(out)
}

/// `(β₀…β_{n_max}, γ₀…γ_{n_max})` by the modified Chebyshev algorithm.
/// Requires `u₀ = 1`; stops with [`Error::NotQuasiDefinite`] at the first
/// vanishing Hankel ratio, even if fewer moments than `2n_max + 2` are given.
pub fn recurrence_from_moments<F: Field>(moments: &[F], n_max: usize) -> Result<(Vec<F>, Vec<F>), Error> {
    let m = moments.len();
    if m == 0 || !moments[0].is_one() {
        return Err(Error::Domain("u₀ must equal 1".into()));
    }
    let short = |k: usize| Error::Domain(format!("not enough moments: level {k} needs u₀…u_{}", 2 * k + 1));
    let mut beta: Vec<F> = Vec::with_capacity(n_max + 1);
    let mut gamma = vec![F::one()];
    // sigma rows indexed by l, valid for l in k..m-k
    let mut prev: Vec<F> = vec![F::zero(); m];
    let mut cur: Vec<F> = moments.to_vec();
    for k in 0..=n_max {
        if k > 0 {
            if m < 2 * k + 1 {
                return Err(short(k));
            }
            let mut next = vec![F::zero(); m];
            for l in k..m - k {
                next[l] = cur[l + 1].clone() - &(beta[k - 1].clone() * &cur[l]) - &(gamma[k - 1].clone() * &prev[l]);
            }
            if next[k].is_zero() {
                return Err(Error::NotQuasiDefinite { n: k });
            }
            gamma.push(next[k].clone() / &cur[k - 1]);
            prev = std::mem::replace(&mut cur, next);
        }
        if m < 2 * k + 2 {
            return Err(short(k));
        }
        let mut b = cur[k + 1].clone() / &cur[k];
        if k > 0 {
            b = b - &(prev[k].clone() / &prev[k - 1]);
        }
        beta.push(b);
    }
    Ok((beta, gamma))
}

/// `qₙ = PₙS − Pₙ₋₁⁽¹⁾`. The series must be known through `x^{-(2n+1)}`
/// so that `qₙ` is known through its leading power `x^{-n-1}`.
pub fn second_kind_series<F: Field>(data: &SmopData<F>, s: &LaurentSeries<F>, n: usize) -> Result<LaurentSeries<F>, Error> {
    let required = 2 * n as i64 + 1;
    if let Some(avail) = s.truncation_order() {
        if avail < required {
            return Err(Error::InsufficientTruncation { required, available: avail });
        }
    }
    Ok(s.mul_poly(&data.p(n as i64)).sub(&LaurentSeries::from_poly(&data.p1(n as i64 - 1))))
}

/// `q₀…q_{n_max}` from `qₙ₊₁ = (x − βₙ)qₙ − γₙqₙ₋₁`, `q₋₁ = 1`, `q₀ = S`.
pub fn second_kind_by_recurrence<F: Field>(data: &SmopData<F>, s: &LaurentSeries<F>) -> Vec<LaurentSeries<F>> {
    let mut out = vec![s.clone()];
    let mut prev = LaurentSeries::one();
    for n in 0..data.n_max {
        let next = out[n]
            .mul_poly(&Poly::linear_root(&data.beta[n]))
            .sub(&prev.scale(&data.gamma[n]));
        prev = out[n].clone();
        out.push(next);
    }
    out
}

/// `Pₙ⁽¹⁾Pₙ − Pₙ₊₁Pₙ₋₁⁽¹⁾ − Πₖ₌₀ⁿγₖ`, identically zero.
pub fn liouville_defect<F: Field>(data: &SmopData<F>, n: usize) -> Poly<F> {
    let n = n as i64;
    let lhs = &(&data.p1(n) * &data.p(n)) - &(&data.p(n + 1) * &data.p1(n - 1));
    &lhs - &Poly::constant(data.gamma_product(n as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::linalg::determinant;
    use crate::test_util::rat;
    use proptest::prelude::*;

    type P = Poly<Rational>;

    fn rats(v: &[&str]) -> Vec<Rational> {
        v.iter().map(|s| rat(s)).collect()
    }

    fn chebyshev_like(n: usize) -> (Vec<Rational>, Vec<Rational>) {
        let beta = vec![rat("0"); n + 1];
        let mut gamma = vec![rat("1/4"); n + 1];
        gamma[0] = rat("1");
        (beta, gamma)
    }

    #[test]
    fn small_recurrences() {
        let mut gamma = vec![rat("1"); 4];
        gamma[0] = rat("1");
        let d = SmopData::from_recurrence(&rats(&["0", "0", "0", "0"]), &gamma, 3).unwrap();
        assert_eq!(d.p(1), P::x());
        assert_eq!(d.p(2), P::from_i64s(&[-1, 0, 1]));
        let (b, g) = chebyshev_like(3);
        let d = SmopData::from_recurrence(&b, &g, 3).unwrap();
        assert_eq!(d.p(3), P::new(rats(&["0", "-1/2", "0", "1"])));
        let d = SmopData::from_recurrence(&rats(&["2/3", "5"]), &rats(&["1", "7"]), 1).unwrap();
        assert_eq!(d.p(1), P::linear_root(&rat("2/3")));
        assert_eq!(d.p1(1), P::linear_root(&rat("5")));
    }

    #[test]
    fn zero_gamma_is_rejected() {
        let r = SmopData::from_recurrence(&rats(&["0", "0", "0"]), &rats(&["1", "1", "0"]), 2);
        assert!(matches!(r, Err(Error::InvalidRecurrence { n: 2 })));
    }

    #[test]
    fn moments_of_the_quarter_recurrence() {
        let (b, g) = chebyshev_like(4);
        let u = moments_from_recurrence(&b, &g, 6).unwrap();
        assert_eq!(u, rats(&["1", "0", "1/4", "0", "1/8", "0", "5/64"]));
    }

    /// `u_k = ⟨x^k⟩` computed independently: expand x^k in the basis Pₙ by
    /// repeated division and read the P₀ component.
    fn moments_by_division(d: &SmopData<Rational>, order: usize) -> Vec<Rational> {
        (0..=order)
            .map(|k| {
                let mut rem = P::monomial(rat("1"), k);
                for n in (1..=k.min(d.n_max())).rev() {
                    let (q, r) = rem.div_rem(&d.p(n as i64));
                    // x^k has degree ≤ n_max here, so q is a constant
                    assert!(q.degree().unwrap_or(0) == 0);
                    rem = r;
                }
                rem.coeff(0)
            })
            .collect()
    }

    #[test]
    fn moments_agree_with_basis_expansion() {
        let d = SmopData::from_recurrence(&rats(&["1", "-2", "1/3", "0"]), &rats(&["1", "2", "-1/5", "3"]), 3).unwrap();
        assert_eq!(d.moments[..=3], moments_by_division(&d, 3)[..]);
    }

    #[test]
    fn recurrence_examples() {
        let (b, g) = recurrence_from_moments(&rats(&["1", "0", "1", "0"]), 1).unwrap();
        assert_eq!(b, rats(&["0", "0"]));
        assert_eq!(g[1], rat("1"));
        let e = recurrence_from_moments(&rats(&["1", "1", "1"]), 3).unwrap_err();
        assert_eq!(e, Error::NotQuasiDefinite { n: 1 });
    }

    #[test]
    fn second_kind_small_cases() {
        let d = SmopData::from_recurrence(&rats(&["1/2", "-1", "2", "0"]), &rats(&["1", "3", "1/2", "2"]), 3).unwrap();
        let s = d.stieltjes();
        assert!(second_kind_series(&d, &s, 0).unwrap().agrees_with(&s));
        let q1 = second_kind_series(&d, &s, 1).unwrap();
        assert_eq!(q1.first_nonzero(), Some((-2, rat("3"))));
        let q2 = second_kind_series(&d, &s, 2).unwrap();
        assert_eq!(q2.leading_power(), Some(-3));
        let short = LaurentSeries::stieltjes(&d.moments[..3]);
        assert!(matches!(
            second_kind_series(&d, &short, 2),
            Err(Error::InsufficientTruncation { required: 5, available: 3 })
        ));
    }

    fn hankel_det(u: &[Rational], n: usize) -> Rational {
        let m: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| u[i + j].clone()).collect()).collect();
        determinant(&m)
    }

    fn arb_recurrence(n: usize) -> impl Strategy<Value = (Vec<Rational>, Vec<Rational>)> {
        (
            prop::collection::vec((-5i64..=5, 1i64..=4), n + 1),
            prop::collection::vec((1i64..=6, 1i64..=4, prop::bool::ANY), n + 1),
        )
            .prop_map(|(b, g)| {
                let beta = b.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect();
                let mut gamma: Vec<Rational> = g
                    .into_iter()
                    .map(|(p, q, neg)| Rational::new(if neg { -p } else { p }.into(), q.into()))
                    .collect();
                gamma[0] = rat("1");
                (beta, gamma)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn liouville_vanishes((b, g) in arb_recurrence(12)) {
            let d = SmopData::from_recurrence(&b, &g, 12).unwrap();
            for n in 0..12 {
                prop_assert!(liouville_defect(&d, n).is_zero());
            }
        }

        #[test]
        fn round_trip_and_hankel_oracle((b, g) in arb_recurrence(8)) {
            let d = SmopData::from_recurrence(&b, &g, 8).unwrap();
            let (b2, g2) = recurrence_from_moments(&d.moments, 8).unwrap();
            prop_assert_eq!(&b2, &b);
            prop_assert_eq!(&g2, &g);
            // γₙ = Hₙ₋₁Hₙ₊₁/Hₙ²
            for n in 1..=5 {
                let (hm, h, hp) = (hankel_det(&d.moments, n - 1), hankel_det(&d.moments, n), hankel_det(&d.moments, n + 1));
                prop_assert_eq!(g[n].clone(), hm * hp / (h.clone() * h));
            }
        }

        #[test]
        fn second_kind_decay_and_recurrence((b, g) in arb_recurrence(10)) {
            let d = SmopData::from_recurrence(&b, &g, 10).unwrap();
            let s = d.stieltjes();
            let rec = second_kind_by_recurrence(&d, &s);
            for n in 0..=10 {
                let q = second_kind_series(&d, &s, n).unwrap();
                prop_assert!(q.agrees_with(&rec[n]));
                // Padé: nothing above x^{-n-1}
                for k in -(n as i64)..=(n as i64) {
                    prop_assert_eq!(q.coeff(k), Some(rat("0")));
                }
                prop_assert_eq!(q.coeff(-(n as i64) - 1), Some(d.gamma_product(n)));
            }
        }
    }
}
