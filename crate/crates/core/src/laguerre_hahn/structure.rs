use super::RiccatiData;
use crate::field::Field;
use crate::lattice::{Lattice, Shift};
use crate::operators::SeriesOps;
use crate::orthopoly::{second_kind_series, SmopData};
use crate::poly::Poly;
use crate::series::LaurentSeries;
use crate::surd::SurdPoly;
use crate::Error;

/// `(lₙ, πₙ, Θₙ)` at one level `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Level<F> {
    pub l: Poly<F>,
    pub pi: Poly<F>,
    pub theta: Poly<F>,
}

/// Structure coefficients for levels `−1 ≤ n ≤ max_level`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureCoeffs<F> {
    /// `levels[n + 1]`
    levels: Vec<Level<F>>,
    /// `theta_hat[n + 1] = Θ̂ₙ = Θₙ·Πₖ₌₀ⁿγₖ`, with `Θ̂₋₁ = D`.
    theta_hat: Vec<Poly<F>>,
    /// `a_gathered[n] = Aₙ = A + (Δ_y²/2)πₙ₋₁ = A + 2rπₙ₋₁`, for `0 ≤ n ≤ max_level + 1`.
    a_gathered: Vec<Poly<F>>,
}

impl<F: Field> StructureCoeffs<F> {
    /// Assembles coefficients from levels `−1, 0, …`; `Θ̂` is recomputed from
    /// the recurrence data.
    pub fn from_levels(lat: &Lattice<F>, r: &RiccatiData<F>, data: &SmopData<F>, levels: Vec<Level<F>>) -> Self {
        let theta_hat = levels
            .iter()
            .enumerate()
            .map(|(i, lv)| if i == 0 { lv.theta.clone() } else { lv.theta.scale(&data.gamma_product(i - 1)) })
            .collect();
        let two_r = lat.r().scale(&F::from_i64(2));
        let a_gathered = levels.iter().map(|lv| &r.a + &(&two_r * &lv.pi)).collect();
        Self { levels, theta_hat, a_gathered }
    }

    /// Highest level present.
    pub fn max_level(&self) -> i64 {
        self.levels.len() as i64 - 2
    }

    pub fn level(&self, n: i64) -> &Level<F> {
        &self.levels[(n + 1) as usize]
    }

    pub fn levels(&self) -> &[Level<F>] {
        &self.levels
    }

    pub fn l(&self, n: i64) -> &Poly<F> {
        &self.level(n).l
    }

    pub fn pi(&self, n: i64) -> &Poly<F> {
        &self.level(n).pi
    }

    pub fn theta(&self, n: i64) -> &Poly<F> {
        &self.level(n).theta
    }

    pub fn theta_hat(&self, n: i64) -> &Poly<F> {
        &self.theta_hat[(n + 1) as usize]
    }

    /// `Aₙ = A + 2rπₙ₋₁` for `0 ≤ n ≤ max_level + 1`.
    pub fn a_gathered(&self, n: usize) -> &Poly<F> {
        &self.a_gathered[n]
    }

    /// Largest degrees of `(l, π, Θ)` over all levels.
    pub fn observed_degrees(&self) -> (i64, i64, i64) {
        let max = |f: fn(&Level<F>) -> &Poly<F>| self.levels.iter().map(|lv| f(lv).degree_or_neg()).max().unwrap_or(-1).max(-1);
        (max(|lv| &lv.l), max(|lv| &lv.pi), max(|lv| &lv.theta))
    }
}

/// The operator images of `Pₙ`, `Pₙ₋₁`, `Pₙ₋₁⁽¹⁾`, `Pₙ₋₂⁽¹⁾` needed at level `n`.
struct Images<F> {
    e1p: SurdPoly<F>,
    e2p: SurdPoly<F>,
    dp: Poly<F>,
    e1p_prev: SurdPoly<F>,
    e2p_prev: SurdPoly<F>,
    e1a: SurdPoly<F>,
    e2a: SurdPoly<F>,
    da: Poly<F>,
    e1a_prev: SurdPoly<F>,
    e2a_prev: SurdPoly<F>,
}

impl<F: Field> Images<F> {
    fn new(lat: &Lattice<F>, data: &SmopData<F>, n: i64) -> Self {
        let (p, p_prev, a, a_prev) = (data.p(n), data.p(n - 1), data.p1(n - 1), data.p1(n - 2));
        Self {
            e1p: lat.shift(&p, Shift::E1),
            e2p: lat.shift(&p, Shift::E2),
            dp: lat.divided_difference(&p),
            e1p_prev: lat.shift(&p_prev, Shift::E1),
            e2p_prev: lat.shift(&p_prev, Shift::E2),
            e1a: lat.shift(&a, Shift::E1),
            e2a: lat.shift(&a, Shift::E2),
            da: lat.divided_difference(&a),
            e1a_prev: lat.shift(&a_prev, Shift::E1),
            e2a_prev: lat.shift(&a_prev, Shift::E2),
        }
    }
}

fn half<F: Field>(p: &Poly<F>) -> Poly<F> {
    p.scale(&(F::one() / &F::from_i64(2)))
}

/// Structure coefficients for levels `−1…n_max−1`, computed level by level:
/// `Θ̂ₙ₋₁` from the products of shifted `Pₙ, Pₙ₋₁⁽¹⁾` (which must be a
/// polynomial of degree at most `σ`), then `Lₙ₋₁ = lₙ₋₁ + 2√r πₙ₋₁` by exact
/// division by `𝔼₁Pₙ`.
///
/// The data must come from a series satisfying the Riccati equation; when it
/// does not, one of the assertions fails with [`Error::NotLaguerreHahn`] or
/// [`Error::DegreeBoundExceeded`].
pub fn structure_coeffs_direct<F: Field>(
    lat: &Lattice<F>,
    r: &RiccatiData<F>,
    data: &SmopData<F>,
    n_max: usize,
) -> Result<StructureCoeffs<F>, Error> {
    if n_max > data.n_max() {
        return Err(Error::Domain(format!("structure coefficients to level {} need P_{n_max}", n_max as i64 - 1)));
    }
    let rr = lat.r();
    let sigma = r.sigma();
    let half_c = half(&r.c);
    let mut levels = vec![Level { l: half_c.clone(), pi: Poly::zero(), theta: r.d.clone() }];
    for n in 1..=n_max {
        let im = Images::new(lat, data, n as i64);
        let a_part = SurdPoly::zero(rr)
            .try_sub(&im.e1p.mul_poly(&im.da))?
            .try_add(&im.e1a.mul_poly(&im.dp))?
            .mul_poly(&r.a);
        let theta_hat = a_part
            .try_add(&(&im.e1a * &im.e2a).mul_poly(&r.b))?
            .try_add(&(&(&im.e1a * &im.e2p) + &(&im.e1p * &im.e2a)).mul_poly(&half_c))?
            .try_add(&(&im.e1p * &im.e2p).mul_poly(&r.d))?;
        if !theta_hat.is_polynomial() {
            return Err(Error::NotLaguerreHahn { n, reason: "Θ̂ has a nonzero √r component".into() });
        }
        let th = theta_hat.u;
        if th.degree_or_neg() > sigma {
            return Err(Error::DegreeBoundExceeded { n, degree: th.degree_or_neg(), bound: sigma });
        }
        let theta = th.scale(&(F::one() / &data.gamma_product(n - 1)));
        let numerator = &(&(&SurdPoly::poly(&r.a * &im.dp, rr) + &im.e2p.mul_poly(&half_c)) + &im.e2a.mul_poly(&r.b))
            - &im.e1p_prev.mul_poly(&theta);
        let big_l = numerator.exact_div(&im.e1p).map_err(|e| match e {
            Error::DivisionNotExact => Error::NotLaguerreHahn { n, reason: "𝔼₁Pₙ does not divide the structure numerator".into() },
            other => other,
        })?;
        levels.push(Level { l: big_l.u, pi: half(&big_l.v), theta });
    }
    Ok(StructureCoeffs::from_levels(lat, r, data, levels))
}

/// Residuals of the two structure relations for `Pₙ` and `Pₙ₋₁⁽¹⁾`, in the
/// 𝔼₁ form (with `lₙ₋₁ + Δ_yπₙ₋₁`) and the 𝔼₂ form (with `lₙ₋₁ − Δ_yπₙ₋₁`).
#[derive(Clone, Debug, PartialEq)]
pub struct StructureResiduals<F> {
    pub first: [SurdPoly<F>; 2],
    pub second: [SurdPoly<F>; 2],
}

impl<F: Field> StructureResiduals<F> {
    pub fn is_zero(&self) -> bool {
        self.first.iter().chain(&self.second).all(SurdPoly::is_zero)
    }
}

/// Evaluates the four structure relations at level `n ≥ 1` exactly.
pub fn verify_structure_relations<F: Field>(
    lat: &Lattice<F>,
    r: &RiccatiData<F>,
    data: &SmopData<F>,
    coeffs: &StructureCoeffs<F>,
    n: usize,
) -> StructureResiduals<F> {
    let rr = lat.r();
    let n = n as i64;
    let im = Images::new(lat, data, n);
    let lv = coeffs.level(n - 1);
    let two_pi = lv.pi.scale(&F::from_i64(2));
    let big_l = [SurdPoly::new(lv.l.clone(), two_pi.clone(), rr), SurdPoly::new(lv.l.clone(), -&two_pi, rr)];
    let half_c = half(&r.c);
    let adp = SurdPoly::poly(&r.a * &im.dp, rr);
    let ada = SurdPoly::poly(&r.a * &im.da, rr);
    // the 𝔼₂ form is the 𝔼₁ form with the two shifts interchanged
    let pair = |l: &SurdPoly<F>, e_same: [&SurdPoly<F>; 4], e_other: [&SurdPoly<F>; 4]| -> [SurdPoly<F>; 2] {
        let [p, p_prev, a, a_prev] = e_same;
        let [p_o, _, a_o, _] = e_other;
        let rhs1 = &(&(l * p) - &p_o.mul_poly(&half_c)) - &(&a_o.mul_poly(&r.b) - &p_prev.mul_poly(&lv.theta));
        let rhs2 = &(&(&(l * a) + &a_o.mul_poly(&half_c)) + &p_o.mul_poly(&r.d)) + &a_prev.mul_poly(&lv.theta);
        [&adp - &rhs1, &ada - &rhs2]
    };
    let e1 = [&im.e1p, &im.e1p_prev, &im.e1a, &im.e1a_prev];
    let e2 = [&im.e2p, &im.e2p_prev, &im.e2a, &im.e2a_prev];
    StructureResiduals { first: pair(&big_l[0], e1, e2), second: pair(&big_l[1], e2, e1) }
}

/// Residuals of the two difference relations for `qₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondKindResiduals<F> {
    pub first: LaurentSeries<F>,
    pub second: LaurentSeries<F>,
}

impl<F: Field> SecondKindResiduals<F> {
    pub fn is_zero(&self) -> bool {
        self.first.is_zero_in_window() && self.second.is_zero_in_window()
    }

    /// Worst (highest) floor of the two residuals.
    pub fn floor(&self) -> Option<i64> {
        match (self.first.floor(), self.second.floor()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }
}

fn q_pair<F: Field>(data: &SmopData<F>, s: &LaurentSeries<F>, n: usize) -> Result<(LaurentSeries<F>, LaurentSeries<F>), Error> {
    let q = second_kind_series(data, s, n)?;
    let q_prev = if n == 0 { LaurentSeries::one() } else { second_kind_series(data, s, n - 1)? };
    Ok((q, q_prev))
}

fn check_window<F: Field>(res: &LaurentSeries<F>, n: usize) -> Result<(), Error> {
    let need = -(n as i64) - 2;
    match res.floor() {
        Some(f) if f > need => Err(Error::InsufficientTruncation { required: -need, available: -f }),
        _ => Ok(()),
    }
}

/// `A𝔻qₙ − (lₙ₋₁ ± Δ_yπₙ₋₁)𝔼ⱼqₙ − (B𝔼ⱼS + C/2)𝔼ₖqₙ − Θₙ₋₁𝔼ⱼqₙ₋₁` for
/// `(j, k) = (1, 2)` and `(2, 1)`, with `q₋₁ = 1`. The residuals must reach
/// at least `x^{-n-2}`.
pub fn second_kind_relations<F: Field>(
    ops: &SeriesOps<F>,
    r: &RiccatiData<F>,
    data: &SmopData<F>,
    coeffs: &StructureCoeffs<F>,
    s: &LaurentSeries<F>,
    n: usize,
) -> Result<SecondKindResiduals<F>, Error> {
    let rr = ops.lattice().r();
    let (q, q_prev) = q_pair(data, s, n)?;
    let sq = ops.all(&q);
    let (e1q_prev, e2q_prev) = ops.shifts(&q_prev);
    let (e1s, e2s) = ops.shifts(s);
    let lv = coeffs.level(n as i64 - 1);
    let two_pi = lv.pi.scale(&F::from_i64(2));
    let half_c = LaurentSeries::from_poly(&half(&r.c));
    let adq = sq.d.mul_poly(&r.a);
    let one = |sign: i64, eq: &LaurentSeries<F>, eq_other: &LaurentSeries<F>, es: &LaurentSeries<F>, eq_prev: &LaurentSeries<F>| {
        let big_l = ops.surd_to_series(&SurdPoly::new(lv.l.clone(), two_pi.scale(&F::from_i64(sign)), rr));
        adq.sub(&big_l.mul(eq))
            .sub(&es.mul_poly(&r.b).add(&half_c).mul(eq_other))
            .sub(&eq_prev.mul_poly(&lv.theta))
    };
    let first = one(1, &sq.e1, &sq.e2, &e1s, &e1q_prev);
    let second = one(-1, &sq.e2, &sq.e1, &e2s, &e2q_prev);
    check_window(&first, n)?;
    check_window(&second, n)?;
    Ok(SecondKindResiduals { first, second })
}

/// Residuals of the gathered relations at `n ≥ 0`: two exact polynomial
/// identities for `Pₙ₊₁`, `Pₙ⁽¹⁾` and one series identity for `qₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GatheredResiduals<F> {
    pub p: Poly<F>,
    pub p1: Poly<F>,
    pub q: LaurentSeries<F>,
}

impl<F: Field> GatheredResiduals<F> {
    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.p1.is_zero() && self.q.is_zero_in_window()
    }
}

/// Checks, with `Aₙ = A + 2rπₙ₋₁`,
///
/// ```text
/// Aₙ₊₁𝔻Pₙ₊₁  = (lₙ − C/2)𝕄Pₙ₊₁ − B𝕄Pₙ⁽¹⁾ + Θₙ𝕄Pₙ
/// Aₙ₊₁𝔻Pₙ⁽¹⁾ = (lₙ + C/2)𝕄Pₙ⁽¹⁾ + D𝕄Pₙ₊₁ + Θₙ𝕄Pₙ₋₁⁽¹⁾
/// Aₙ𝔻qₙ      = (lₙ₋₁ + C/2)𝕄qₙ + B(2𝕄S𝕄qₙ − 𝕄(Sqₙ)) + Θₙ₋₁𝕄qₙ₋₁
/// ```
pub fn gathered_relations<F: Field>(
    ops: &SeriesOps<F>,
    r: &RiccatiData<F>,
    data: &SmopData<F>,
    coeffs: &StructureCoeffs<F>,
    s: &LaurentSeries<F>,
    n: usize,
) -> Result<GatheredResiduals<F>, Error> {
    let lat = ops.lattice();
    let ni = n as i64;
    let half_c = half(&r.c);
    let lv = coeffs.level(ni);
    let a_next = coeffs.a_gathered(n + 1);
    let (d_next, m_next) = lat.divided_difference_and_average(&data.p(ni + 1));
    let (d_assoc, m_assoc) = lat.divided_difference_and_average(&data.p1(ni));
    let p = &(&(a_next * &d_next) - &(&(&lv.l - &half_c) * &m_next)) + &(&(&r.b * &m_assoc) - &(&lv.theta * &lat.average(&data.p(ni))));
    let p1 = &(&(a_next * &d_assoc) - &(&(&lv.l + &half_c) * &m_assoc))
        - &(&(&r.d * &m_next) + &(&lv.theta * &lat.average(&data.p1(ni - 1))));

    let (q, q_prev) = q_pair(data, s, n)?;
    let prev = coeffs.level(ni - 1);
    let sq = ops.all(&q);
    let ms = ops.average(s);
    let m_sq = ops.average(&s.mul(&q));
    let m_q_prev = ops.average(&q_prev);
    let mut q_res = sq
        .d
        .mul_poly(coeffs.a_gathered(n))
        .sub(&sq.m.mul_poly(&(&prev.l + &half_c)))
        .sub(&m_q_prev.mul_poly(&prev.theta));
    if !r.b.is_zero() {
        let bracket = ms.mul(&sq.m).scale(&F::from_i64(2)).sub(&m_sq);
        q_res = q_res.sub(&bracket.mul_poly(&r.b));
    }
    check_window(&q_res, n)?;
    Ok(GatheredResiduals { p, p1, q: q_res })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::laguerre_hahn::fixtures::{reference_instance, reference_ops};
    use crate::laguerre_hahn::{riccati_residual, solve_moments_from_riccati};
    use crate::poly::Poly;
    use crate::test_util::rat;

    type P = Poly<Rational>;

    fn pipeline(n_max: usize) -> (RiccatiData<Rational>, SeriesOps<Rational>, SmopData<Rational>, LaurentSeries<Rational>) {
        let (r, _) = reference_instance();
        let trunc = 2 * n_max + 12;
        let ops = reference_ops(trunc as i64 + 6);
        let u = solve_moments_from_riccati(&ops, &r, trunc).unwrap();
        let data = SmopData::from_moments(&u, n_max).unwrap();
        let s = LaurentSeries::stieltjes(&u);
        (r, ops, data, s)
    }

    #[test]
    fn direct_coefficients_satisfy_all_relations() {
        let (r, ops, data, s) = pipeline(5);
        assert!(riccati_residual(&ops, &r, &s).unwrap().is_zero_in_window());
        let lat = ops.lattice();
        let c = structure_coeffs_direct(lat, &r, &data, 5).unwrap();
        assert_eq!(c.max_level(), 4);
        for n in 1..=5 {
            assert!(verify_structure_relations(lat, &r, &data, &c, n).is_zero(), "structure n={n}");
        }
        for n in 0..=4 {
            let sk = second_kind_relations(&ops, &r, &data, &c, &s, n).unwrap();
            assert!(sk.is_zero(), "second kind n={n}");
            let g = gathered_relations(&ops, &r, &data, &c, &s, n).unwrap();
            assert!(g.is_zero(), "gathered n={n}");
        }
    }

    #[test]
    fn second_kind_at_zero_is_the_riccati_equation() {
        let (r, ops, data, s) = pipeline(3);
        let c = structure_coeffs_direct(ops.lattice(), &r, &data, 3).unwrap();
        let sk = second_kind_relations(&ops, &r, &data, &c, &s, 0).unwrap();
        let ric = riccati_residual(&ops, &r, &s).unwrap();
        assert!(sk.first.agrees_with(&ric) && sk.second.agrees_with(&ric));
    }

    #[test]
    fn initial_levels_match_closed_forms() {
        let (r, ops, data, _) = pipeline(3);
        let lat = ops.lattice();
        let c = structure_coeffs_direct(lat, &r, &data, 3).unwrap();
        assert_eq!(c.l(-1), &r.c.scale(&rat("1/2")));
        assert!(c.pi(-1).is_zero());
        assert_eq!(c.theta(-1), &r.d);
        assert_eq!(c.pi(0), &r.d.scale(&rat("-1/2")));
        let m0 = lat.average_linear(&data.beta[0]);
        let l0 = &(-&(&m0 * &r.d)) - &r.c.scale(&rat("1/2"));
        assert_eq!(c.l(0), &l0);
        let theta0 = &(&(&r.a - &(lat.r() * &r.d)) - &(&(&l0 - &r.c.scale(&rat("1/2"))) * &m0)) + &r.b;
        assert_eq!(c.theta(0), &theta0);
    }

    #[test]
    fn sensitivity_to_theta() {
        let (r, ops, data, _) = pipeline(3);
        let lat = ops.lattice();
        let c = structure_coeffs_direct(lat, &r, &data, 3).unwrap();
        let mut levels = c.levels().to_vec();
        levels[1].theta = &levels[1].theta + &P::one();
        let bad = StructureCoeffs::from_levels(lat, &r, &data, levels);
        assert!(!verify_structure_relations(lat, &r, &data, &bad, 1).is_zero());
    }

    #[test]
    fn generic_recurrence_is_not_laguerre_hahn() {
        let (r, ops, _, _) = pipeline(2);
        let b: Vec<Rational> = ["1", "2", "-1", "3", "1/2", "0", "2"].iter().map(|s| rat(s)).collect();
        let g: Vec<Rational> = ["1", "2", "3", "1/3", "5", "7", "1/2"].iter().map(|s| rat(s)).collect();
        let data = SmopData::from_recurrence(&b, &g, 6).unwrap();
        let err = structure_coeffs_direct(ops.lattice(), &r, &data, 6).unwrap_err();
        assert!(matches!(err, Error::NotLaguerreHahn { .. } | Error::DegreeBoundExceeded { .. }), "{err:?}");
    }
}
