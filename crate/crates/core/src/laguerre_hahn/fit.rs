use super::RiccatiData;
use crate::field::Field;
use crate::linalg::{nullspace, rank};
use crate::operators::SeriesOps;
use crate::poly::Poly;
use crate::series::LaurentSeries;

/// The solution space of `A𝔻S − B𝔼₁S𝔼₂S − C𝕄S − D = 0` (within the window of
/// `S`) for `deg A ≤ dA, …, deg D ≤ dD`.
#[derive(Clone, Debug)]
pub struct FitResult<F> {
    /// Basis vectors with `A ≠ 0`, rescaled so that `A` is monic.
    pub candidates: Vec<RiccatiData<F>>,
    /// Number of coefficient equations used.
    pub equations: usize,
    /// Dimension of the full nullspace, before the `A ≠ 0` filter.
    pub dimension: usize,
    basis: Vec<Vec<F>>,
    bounds: [usize; 4],
}

impl<F: Field> FitResult<F> {
    pub fn bounds(&self) -> [usize; 4] {
        self.bounds
    }

    /// True when `r` lies in the nullspace, i.e. it satisfies the same
    /// linear system.
    pub fn contains(&self, r: &RiccatiData<F>) -> bool {
        let mut v = Vec::new();
        for (p, &bound) in r.polys().into_iter().zip(&self.bounds) {
            if p.degree_or_neg() > bound as i64 {
                return false;
            }
            v.extend((0..=bound).map(|i| p.coeff(i)));
        }
        let mut with = self.basis.clone();
        with.push(v);
        rank(&with) == self.basis.len()
    }
}

fn split<F: Field>(v: &[F], bounds: [usize; 4]) -> RiccatiData<F> {
    let mut start = 0;
    let mut parts = bounds.iter().map(|&b| {
        let p = Poly::new(v[start..=start + b].to_vec());
        start += b + 1;
        p
    });
    let (a, b, c, d) = (parts.next().unwrap(), parts.next().unwrap(), parts.next().unwrap(), parts.next().unwrap());
    RiccatiData { a, b, c, d }
}

/// Sets up one linear equation per known power of `x` in the residual, with
/// the coefficients of `(A, B, C, D)` as unknowns (the series `𝔻S`,
/// `𝔼₁S𝔼₂S`, `𝕄S` are known), and returns its exact nullspace. An empty
/// candidate list means no relation within the bounds and window.
pub fn fit_riccati<F: Field>(ops: &SeriesOps<F>, s: &LaurentSeries<F>, bounds: [usize; 4]) -> FitResult<F> {
    let sh = ops.all(s);
    let bases = [sh.d, sh.e1.mul(&sh.e2).neg(), sh.m.neg(), LaurentSeries::monomial(-F::one(), 0)];
    let mut columns = Vec::new();
    for (base, &deg) in bases.iter().zip(&bounds) {
        for i in 0..=deg {
            columns.push(base.mul_poly(&Poly::monomial(F::one(), i)));
        }
    }
    let floor = columns.iter().filter_map(LaurentSeries::floor).max().unwrap_or(-ops.depth());
    let top = columns.iter().filter_map(LaurentSeries::leading_power).max().unwrap_or(floor).max(floor);
    let rows: Vec<Vec<F>> = (floor..=top)
        .rev()
        .map(|k| columns.iter().map(|c| c.coeff(k).unwrap_or_else(F::zero)).collect())
        .collect();
    let basis = nullspace(&rows, columns.len());
    let candidates = basis
        .iter()
        .map(|v| split(v, bounds))
        .filter(|r| !r.a.is_zero())
        .map(|r| r.normalized())
        .collect();
    FitResult { candidates, equations: rows.len(), dimension: basis.len(), basis, bounds }
}
