use super::{RiccatiData, StructureCoeffs};
use crate::field::Field;
use crate::lattice::{Lattice, Shift};
use crate::orthopoly::SmopData;
use crate::poly::Poly;
use crate::Error;

/// `Θ̂ₙ₋₁ = A·W + B·V + C·X + D·Y`; returns `(W, V, X, Y)` at level `n ≥ 1`.
fn theta_hat_basis<F: Field>(lat: &Lattice<F>, data: &SmopData<F>, n: i64) -> [Poly<F>; 4] {
    let p = data.p(n);
    let a = data.p1(n - 1);
    let (e1p, e2p) = (lat.shift(&p, Shift::E1), lat.shift(&p, Shift::E2));
    let (e1a, e2a) = (lat.shift(&a, Shift::E1), lat.shift(&a, Shift::E2));
    let w = &e1a.mul_poly(&lat.divided_difference(&p)) - &e1p.mul_poly(&lat.divided_difference(&a));
    let v = &e1a * &e2a;
    let x = (&(&e1a * &e2p) + &(&e1p * &e2a)).scale(&(F::one() / &F::from_i64(2)));
    let y = &e1p * &e2p;
    // all four are polynomials; keep only the polynomial parts
    [w.u, v.u, x.u, y.u]
}

/// Reads `(A, B, C, D)` back from structure coefficients.
///
/// `C = 2l₋₁` and `D = Θ₋₁` directly; level 0 gives `A + B = Θ₀ − C𝕄(x−β₀)
/// − D𝔼₁(x−β₀)𝔼₂(x−β₀)`, and the first level `n ≥ 2` at which the
/// contributions of `A` and `B` to `Θ̂ₙ₋₁` differ separates them. The result is
/// then checked against every available `Θ̂`.
pub fn reconstruct_riccati<F: Field>(
    lat: &Lattice<F>,
    data: &SmopData<F>,
    coeffs: &StructureCoeffs<F>,
) -> Result<RiccatiData<F>, Error> {
    if coeffs.max_level() < 0 {
        return Err(Error::Domain("reconstruction needs levels −1 and 0".into()));
    }
    if !coeffs.pi(-1).is_zero() {
        return Err(Error::Domain("π₋₁ must vanish".into()));
    }
    let c = coeffs.l(-1).scale(&F::from_i64(2));
    let d = coeffs.theta(-1).clone();
    let sum_ab = &(coeffs.theta(0) - &(&c * &lat.average_linear(&data.beta[0]))) - &(&d * &lat.shift_product_linear(&data.beta[0]));

    let top = coeffs.max_level() + 1;
    let mut b = None;
    for n in 2..=top {
        let [w, v, x, y] = theta_hat_basis(lat, data, n);
        let diff = &v - &w;
        if diff.is_zero() {
            continue;
        }
        // Θ̂ − CX − DY = AW + BV = (A + B)W + B(V − W)
        let rhs = &(&(coeffs.theta_hat(n - 1) - &(&c * &x)) - &(&d * &y)) - &(&sum_ab * &w);
        let found = rhs.exact_div(&diff).map_err(|_| Error::NotLaguerreHahn {
            n: n as usize,
            reason: "Θ̂ is not of the form AW + BV + CX + DY".into(),
        })?;
        b = Some(found);
        break;
    }
    let b = b.ok_or_else(|| Error::Underdetermined(format!("A and B contribute identically to Θ̂ₙ for every n < {top}")))?;
    let a = &sum_ab - &b;
    if a.is_zero() {
        return Err(Error::Underdetermined("the recovered A vanishes".into()));
    }
    let r = RiccatiData { a, b, c, d };
    for n in 1..=top {
        let [w, v, x, y] = theta_hat_basis(lat, data, n);
        let th = &(&(&(&r.a * &w) + &(&r.b * &v)) + &(&r.c * &x)) + &(&r.d * &y);
        if &th != coeffs.theta_hat(n - 1) {
            return Err(Error::NotLaguerreHahn { n: n as usize, reason: "reconstructed data does not reproduce Θ̂".into() });
        }
    }
    Ok(r)
}
