use super::RiccatiData;
use crate::field::Field;
use crate::operators::SeriesOps;
use crate::series::LaurentSeries;
use crate::Error;

/// `A𝔻S − B𝔼₁S𝔼₂S − C𝕄S − D`, with the window the arithmetic supports.
///
/// Fails when the window does not reach `x^{σ−1}`, the first power that
/// involves `u₁` (see [`RiccatiData::sigma`]).
pub fn riccati_residual<F: Field>(
    ops: &SeriesOps<F>,
    r: &RiccatiData<F>,
    s: &LaurentSeries<F>,
) -> Result<LaurentSeries<F>, Error> {
    let res = raw_residual(ops, r, s);
    let need = r.sigma() - 1;
    match res.floor() {
        Some(f) if f > need => Err(Error::InsufficientTruncation { required: -need, available: -f }),
        _ => Ok(res),
    }
}

fn raw_residual<F: Field>(ops: &SeriesOps<F>, r: &RiccatiData<F>, s: &LaurentSeries<F>) -> LaurentSeries<F> {
    let sh = ops.all(s);
    let mut res = sh.d.mul_poly(&r.a).sub(&sh.m.mul_poly(&r.c)).sub(&LaurentSeries::from_poly(&r.d));
    if !r.b.is_zero() {
        res = res.sub(&sh.e1.mul(&sh.e2).mul_poly(&r.b));
    }
    res
}

/// Solves the Riccati equation for `u₀ = 1, u₁, …, u_count`.
///
/// The coefficient of `x^{σ−k}` in the residual depends on `u₀…u_k` only and
/// is affine in `u_k`, so the moments are found one at a time. A vanishing
/// coefficient of `u_k` yields [`Error::FreeParameter`] or
/// [`Error::Inconsistent`].
pub fn solve_moments_from_riccati<F: Field>(ops: &SeriesOps<F>, r: &RiccatiData<F>, count: usize) -> Result<Vec<F>, Error> {
    solve_moments_with_choices(ops, r, count, &mut |_| None)
}

/// As [`solve_moments_from_riccati`], but asks `choose(k)` for the value of a
/// free moment `u_k`; `None` aborts with [`Error::FreeParameter`].
pub fn solve_moments_with_choices<F: Field>(
    ops: &SeriesOps<F>,
    r: &RiccatiData<F>,
    count: usize,
    choose: &mut dyn FnMut(usize) -> Option<F>,
) -> Result<Vec<F>, Error> {
    let sigma = r.sigma();
    if r.d.degree_or_neg() > sigma {
        // the top of D cannot be balanced by anything involving S
        return Err(Error::Inconsistent { k: 0 });
    }
    let coeff_at = |u: &[F], power: i64| -> Result<F, Error> {
        raw_residual(ops, r, &LaurentSeries::stieltjes(u)).coeff_checked(power)
    };
    let mut u = vec![F::one()];
    if !coeff_at(&u, sigma)?.is_zero() {
        return Err(Error::Inconsistent { k: 0 });
    }
    for k in 1..=count {
        let power = sigma - k as i64;
        u.push(F::zero());
        let r0 = coeff_at(&u, power)?;
        u[k] = F::one();
        let slope = coeff_at(&u, power)? - &r0;
        u[k] = if !slope.is_zero() {
            -(r0 / &slope)
        } else if r0.is_zero() {
            choose(k).ok_or(Error::FreeParameter { k })?
        } else {
            return Err(Error::Inconsistent { k });
        };
    }
    Ok(u)
}
