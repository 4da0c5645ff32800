use super::{Level, RiccatiData, StructureCoeffs};
use crate::field::Field;
use crate::lattice::Lattice;
use crate::orthopoly::SmopData;
use crate::poly::Poly;
use crate::Error;

fn div<F: Field>(p: &Poly<F>, c: &F) -> Poly<F> {
    p.scale(&(F::one() / c))
}

/// Levels `−1` and `0` in closed form:
///
/// ```text
/// l₋₁ = C/2,   π₋₁ = 0,   Θ₋₁ = D,
/// l₀ = −𝕄(x−β₀)D − C/2,   π₀ = −D/2,
/// Θ₀ = A − rD − (l₀ − C/2)𝕄(x−β₀) + B
/// ```
pub fn initial_levels<F: Field>(lat: &Lattice<F>, r: &RiccatiData<F>, data: &SmopData<F>) -> [Level<F>; 2] {
    let half = F::one() / &F::from_i64(2);
    let half_c = r.c.scale(&half);
    let m0 = lat.average_linear(&data.beta[0]);
    let l0 = &(-&(&m0 * &r.d)) - &half_c;
    let theta0 = &(&(&r.a - &(lat.r() * &r.d)) - &(&(&l0 - &half_c) * &m0)) + &r.b;
    [
        Level { l: half_c.clone(), pi: Poly::zero(), theta: r.d.clone() },
        Level { l: l0, pi: r.d.scale(&(-half)), theta: theta0 },
    ]
}

/// Level `n + 1` from levels `−1…n` (stored at `levels[k + 1]`), `n ≥ 0`:
///
/// ```text
/// πₙ₊₁ = −πₙ − Θₙ/(2γₙ₊₁) − Σₖ₌₀ⁿ Θₖ₋₁/γₖ
/// lₙ₊₁ = −lₙ − 𝕄(x−βₙ₊₁)Θₙ/γₙ₊₁
/// Θₙ₊₁ = A + 2r(πₙ + πₙ₋₁) + (Θₙ₋₁/γₙ)(γₙ₊₁ − r − 𝕄(x−βₙ)𝕄(x−βₙ₊₁))
///        + (Θₙ/γₙ₊₁)𝔼₁(x−βₙ₊₁)𝔼₂(x−βₙ₊₁) + 𝕄(x−βₙ₊₁)(lₙ − lₙ₋₁)
/// ```
pub fn corollary_step<F: Field>(
    lat: &Lattice<F>,
    r: &RiccatiData<F>,
    data: &SmopData<F>,
    levels: &[Level<F>],
    n: usize,
) -> Level<F> {
    let cur = &levels[n + 1];
    let prev = &levels[n];
    let (g_n, g_next) = (&data.gamma[n], &data.gamma[n + 1]);
    let m_n = lat.average_linear(&data.beta[n]);
    let m_next = lat.average_linear(&data.beta[n + 1]);
    let rr = lat.r();

    let sum = (0..=n).fold(Poly::zero(), |acc, k| &acc + &div(&levels[k].theta, &data.gamma[k]));
    let pi = &(&(-&cur.pi) - &div(&cur.theta, &(g_next.clone() * &F::from_i64(2)))) - &sum;

    let theta_over = div(&cur.theta, g_next);
    let l = &(-&cur.l) - &(&m_next * &theta_over);

    let bracket = &(&Poly::constant(g_next.clone()) - rr) - &(&m_n * &m_next);
    let theta = &(&(&(&r.a + &(&rr.scale(&F::from_i64(2)) * &(&cur.pi + &prev.pi))) + &(&div(&prev.theta, g_n) * &bracket))
        + &(&theta_over * &lat.shift_product_linear(&data.beta[n + 1])))
        + &(&m_next * &(&cur.l - &prev.l));
    Level { l, pi, theta }
}

/// Levels `−1…max_level` from the initial conditions and [`corollary_step`].
pub fn corollary_coefficients<F: Field>(
    lat: &Lattice<F>,
    r: &RiccatiData<F>,
    data: &SmopData<F>,
    max_level: usize,
) -> Result<StructureCoeffs<F>, Error> {
    if max_level > data.n_max() {
        return Err(Error::Domain(format!("level {max_level} needs recurrence coefficients through n = {max_level}")));
    }
    let mut levels = initial_levels(lat, r, data).to_vec();
    for n in 0..max_level {
        let next = corollary_step(lat, r, data, &levels, n);
        levels.push(next);
    }
    Ok(StructureCoeffs::from_levels(lat, r, data, levels))
}

/// Riccati data `(Aₙ, Bₙ, Cₙ, Dₙ)` of the ratio `qₙ/qₙ₋₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct MagnusData<F> {
    pub a: Poly<F>,
    pub b: Poly<F>,
    pub c: Poly<F>,
    pub d: Poly<F>,
}

/// The level-`n` data built from structure coefficients, `n ≥ 0`:
///
/// ```text
/// Aₙ = A + 2r(πₙ + πₙ₋₁ − Θₙ₋₁/(2γₙ)),   Bₙ = Θₙ₋₁/γₙ,
/// Cₙ = lₙ − lₙ₋₁ − 𝕄(x−βₙ)Θₙ₋₁/γₙ,       Dₙ = Θₙ
/// ```
pub fn magnus_data<F: Field>(
    lat: &Lattice<F>,
    r: &RiccatiData<F>,
    data: &SmopData<F>,
    coeffs: &StructureCoeffs<F>,
    n: usize,
) -> MagnusData<F> {
    let ni = n as i64;
    let (cur, prev) = (coeffs.level(ni), coeffs.level(ni - 1));
    let b = div(&prev.theta, &data.gamma[n]);
    let inner = &(&cur.pi + &prev.pi) - &b.scale(&(F::one() / &F::from_i64(2)));
    MagnusData {
        a: &r.a + &(&lat.r().scale(&F::from_i64(2)) * &inner),
        c: &(&cur.l - &prev.l) - &(&lat.average_linear(&data.beta[n]) * &b),
        b,
        d: cur.theta.clone(),
    }
}

/// One step of the Riccati data of successive ratios:
///
/// ```text
/// Aₙ₊₁ = ϱ(Aₙ − 2rDₙ/γₙ₊₁)
/// Bₙ₊₁ = ϱDₙ/γₙ₊₁
/// Cₙ₊₁ = ϱ(−Cₙ − 2𝕄(x−βₙ₊₁)Dₙ/γₙ₊₁)
/// Dₙ₊₁ = ϱ(Aₙ + γₙ₊₁Bₙ + 𝕄(x−βₙ₊₁)Cₙ + 𝔼₁(x−βₙ₊₁)𝔼₂(x−βₙ₊₁)Dₙ/γₙ₊₁)
/// ```
pub fn magnus_step<F: Field>(lat: &Lattice<F>, m: &MagnusData<F>, beta_next: &F, gamma_next: &F, rho: &Poly<F>) -> MagnusData<F> {
    let d_over = div(&m.d, gamma_next);
    let mx = lat.average_linear(beta_next);
    let two = F::from_i64(2);
    let a = &m.a - &(&lat.r().scale(&two) * &d_over);
    let c = &(-&m.c) - &(&mx * &d_over).scale(&two);
    let d = &(&(&m.a + &m.b.scale(gamma_next)) + &(&mx * &m.c)) + &(&lat.shift_product_linear(beta_next) * &d_over);
    MagnusData { a: rho * &a, b: rho * &d_over, c: rho * &c, d: rho * &d }
}

/// Defects of the two telescoping identities, indexed by `n = 0…max_level`:
///
/// ```text
/// Lₙ = lₙ + lₙ₋₁ + 𝕄(x−βₙ)Θₙ₋₁/γₙ                      (must vanish)
/// Tₙ + Σₖ₌₀ⁿ⁻¹ Θₖ₋₁/γₖ,  Tₙ = πₙ + πₙ₋₁ + Θₙ₋₁/(2γₙ)    (must vanish)
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct Telescopes<F> {
    pub l: Vec<Poly<F>>,
    pub t: Vec<Poly<F>>,
}

impl<F: Field> Telescopes<F> {
    pub fn is_zero(&self) -> bool {
        self.l.iter().chain(&self.t).all(Poly::is_zero)
    }
}

pub fn telescopes<F: Field>(lat: &Lattice<F>, data: &SmopData<F>, coeffs: &StructureCoeffs<F>) -> Telescopes<F> {
    let mut l = Vec::new();
    let mut t = Vec::new();
    let mut sum = Poly::zero();
    for n in 0..=coeffs.max_level() {
        let nu = n as usize;
        let (cur, prev) = (coeffs.level(n), coeffs.level(n - 1));
        let ratio = div(&prev.theta, &data.gamma[nu]);
        l.push(&(&cur.l + &prev.l) + &(&lat.average_linear(&data.beta[nu]) * &ratio));
        let tn = &(&cur.pi + &prev.pi) + &ratio.scale(&(F::one() / &F::from_i64(2)));
        t.push(&tn + &sum);
        sum = &sum + &ratio;
    }
    Telescopes { l, t }
}
