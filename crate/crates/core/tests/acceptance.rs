//! Acceptance suite. Runs without the libtest harness and prints one line
//! per criterion; exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use lhsnul::laguerre_hahn::{
    certify, fit_riccati, reconstruct_riccati, Certificate, CertifyInput, CertifyOptions, RiccatiData,
};
use lhsnul::lattice::has_rational_sqrt_lambda;
use lhsnul::orthopoly::{liouville_defect, moments_from_recurrence, recurrence_from_moments, second_kind_by_recurrence, second_kind_series};
use lhsnul::{Field, Lattice, LatticeClass, LaurentSeries, Poly, Rational, SeriesOps, Shift, SmopData, SurdPoly};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const N_MAX: usize = 8;
const TRUNCATION: usize = 2 * N_MAX + 12;

struct Images {
    e1: SurdPoly<Rational>,
    e2: SurdPoly<Rational>,
    d: SurdPoly<Rational>,
    m: SurdPoly<Rational>,
}

fn images(lat: &Lattice<Rational>, f: &Poly<Rational>) -> Images {
    let lift = |p: Poly<Rational>| SurdPoly::poly(p, lat.r());
    Images {
        e1: lat.shift(f, Shift::E1),
        e2: lat.shift(f, Shift::E2),
        d: lift(lat.divided_difference(f)),
        m: lift(lat.average(f)),
    }
}

fn poly_laws(lat: &Lattice<Rational>, f: &Poly<Rational>, g: &Poly<Rational>) -> Result<(), String> {
    let delta2 = SurdPoly::poly(lat.delta_squared(), lat.r());
    let quarter = Rational::from_i64(1) / &Rational::from_i64(4);
    let (fi, gi) = (images(lat, f), images(lat, g));
    let gf = images(lat, &(g * f));
    let e12 = &fi.e1 * &fi.e2;

    ensure!(gf.d == &(&gi.d * &fi.m) + &(&gi.m * &fi.d), "𝔻 product rule");
    ensure!(gf.m == &(&gi.m * &fi.m) + &(&delta2.scale(&quarter) * &(&gi.d * &fi.d)), "𝕄 product rule");
    ensure!(gf.d == &(&gi.d * &fi.e1) + &(&fi.d * &gi.e2), "𝔻 product rule, 𝔼₁ form");
    ensure!(gf.d == &(&gi.d * &fi.e2) + &(&fi.d * &gi.e1), "𝔻 product rule, 𝔼₂ form");
    // quotient rules with numerator gf, so that the quotient is the polynomial g
    let lhs = &gi.d * &e12;
    ensure!(lhs == &(&gf.d * &fi.m) - &(&fi.d * &gf.m), "𝔻 quotient rule");
    ensure!(lhs == &(&gf.d * &fi.e1) - &(&fi.d * &gf.e1), "𝔻 quotient rule, 𝔼₁ form");
    ensure!(lhs == &(&gf.d * &fi.e2) - &(&fi.d * &gf.e2), "𝔻 quotient rule, 𝔼₂ form");
    let two = Rational::from_i64(2);
    ensure!((&gi.m * &e12).scale(&two) == &(&gf.e1 * &fi.e2) + &(&gf.e2 * &fi.e1), "𝕄 quotient rule");
    Ok(())
}

fn zero_in_window(s: &LaurentSeries<Rational>, what: &str) -> Result<(), String> {
    ensure!(s.is_zero_in_window(), "{what}: nonzero residual");
    // a window that ends above x^-4 would make the check vacuous
    ensure!(s.floor().is_none_or(|f| f <= -4), "{what}: window too short ({:?})", s.floor());
    Ok(())
}

fn series_laws(
    ops: &SeriesOps<Rational>,
    f: &Poly<Rational>,
    g: &Poly<Rational>,
    t: &LaurentSeries<Rational>,
) -> Result<(), String> {
    let lat = ops.lattice();
    let inv = LaurentSeries::from_poly(f).inverse(-ops.depth()).map_err(|e| e.to_string())?;
    let w = LaurentSeries::from_poly(g).mul(&inv);
    let fs = ops.all(&LaurentSeries::from_poly(f));
    let gs = ops.all(&LaurentSeries::from_poly(g));
    let e12 = fs.e1.mul(&fs.e2);

    let i = ops.all(&inv);
    zero_in_window(&i.d.mul(&e12).add(&fs.d), "𝔻(1/f)")?;
    zero_in_window(&i.m.mul(&e12).sub(&fs.m), "𝕄(1/f)")?;

    let q = ops.all(&w);
    let dq = gs.d.mul(&fs.m).sub(&fs.d.mul(&gs.m));
    zero_in_window(&q.d.mul(&e12).sub(&dq), "𝔻(g/f)")?;
    let mq = gs.e1.mul(&fs.e2).add(&gs.e2.mul(&fs.e1));
    zero_in_window(&q.m.mul(&e12).scale(&Rational::from_i64(2)).sub(&mq), "𝕄(g/f)")?;

    // product rules on two genuine series
    let (a, b) = (i, ops.all(t));
    let ab = ops.all(&inv.mul(t));
    zero_in_window(&ab.d.sub(&a.d.mul(&b.m).add(&a.m.mul(&b.d))), "𝔻(ST)")?;
    let m_rhs = a.m.mul(&b.m).add(&a.d.mul(&b.d).mul_poly(lat.r()));
    zero_in_window(&ab.m.sub(&m_rhs), "𝕄(ST)")?;
    zero_in_window(&ab.d.sub(&a.d.mul(&b.e1).add(&b.d.mul(&a.e2))), "𝔻(ST), 𝔼₁ form")?;
    Ok(())
}

fn random_moments(rng: &mut rand::rngs::StdRng, count: usize) -> Vec<Rational> {
    let mut u = vec![Rational::from_i64(1)];
    u.extend((1..count).map(|_| small_rational(rng)));
    u
}

fn criterion_1() -> Outcome {
    let mut rng = rng(1);
    let (mut poly_cases, mut series_cases) = (0, 0);
    for cs in RATIONAL_SQRT_LAMBDA {
        let lat = lattice(cs);
        ensure!(lat.class() == LatticeClass::QQuadratic, "{cs:?} is not q-quadratic");
        ensure!(has_rational_sqrt_lambda(lat.conic()), "{cs:?}: √λ irrational");
        let ops = SeriesOps::new(&lat, 24).map_err(|e| e.to_string())?;
        for case in 0..60 {
            let (f, g) = (random_poly(&mut rng, 8), random_poly(&mut rng, 8));
            poly_laws(&lat, &f, &g).map_err(|e| format!("{e} on {cs:?} with f = {f}, g = {g}"))?;
            poly_cases += 1;
            if case < 6 {
                let t = LaurentSeries::stieltjes(&random_moments(&mut rng, 12));
                let (f, g) = (random_poly(&mut rng, 4), random_poly(&mut rng, 4));
                series_laws(&ops, &f, &g, &t).map_err(|e| format!("{e} on {cs:?} with f = {f}, g = {g}"))?;
                series_cases += 1;
            }
        }
    }
    Ok(format!(
        "{poly_cases} polynomial cases (8 identities each) and {series_cases} series cases on {} lattices",
        RATIONAL_SQRT_LAMBDA.len()
    ))
}

fn criterion_2() -> Outcome {
    let mut rng = rng(2);
    let lats: Vec<_> = RATIONAL_SQRT_LAMBDA.into_iter().map(lattice).collect();
    for k in 0..100 {
        let lat = &lats[k % lats.len()];
        let (f, g) = (random_poly(&mut rng, 8), random_poly(&mut rng, 8));
        let (fi, gi) = (images(lat, &f), images(lat, &g));
        ensure!((&fi.e1 * &fi.e2).v.is_zero(), "𝔼₁f𝔼₂f has a √r part for f = {f}");
        ensure!((&fi.e1 + &fi.e2).v.is_zero(), "𝔼₁f + 𝔼₂f has a √r part for f = {f}");
        ensure!((&(&fi.e1 * &fi.e1) + &(&fi.e2 * &fi.e2)).v.is_zero(), "(𝔼₁f)² + (𝔼₂f)² has a √r part for f = {f}");
        let half = Rational::from_i64(1) / &Rational::from_i64(2);
        let delta2 = SurdPoly::poly(lat.delta_squared(), lat.r());
        let lhs = &(&fi.e1 * &gi.e2) + &(&gi.e1 * &fi.e2);
        let rhs = &(&gi.m * &fi.m).scale(&Rational::from_i64(2)) - &(&delta2.scale(&half) * &(&gi.d * &fi.d));
        ensure!(lhs == rhs, "𝔼₁f𝔼₂g + 𝔼₁g𝔼₂f identity fails for f = {f}, g = {g}");
        let lhs = &(&gi.d * &fi.e1) - &(&fi.d * &gi.e1);
        let dgf = images(lat, &(&g * &f)).d;
        let rhs = &(&fi.m * &gi.d).scale(&Rational::from_i64(2)) - &dgf;
        ensure!(lhs == rhs, "𝔻g𝔼₁f − 𝔻f𝔼₁g identity fails for f = {f}, g = {g}");
    }
    Ok("100 random pairs: no √r parts, both identities exact".into())
}

fn criterion_3() -> Outcome {
    let mut rng = rng(3);
    let mut tested = 0;
    for cs in RATIONAL_SQRT_LAMBDA {
        let lat = lattice(cs);
        for deg in 0..=8 {
            for _ in 0..10 {
                let f = poly_of_degree(&mut rng, deg);
                let d = lat.divided_difference(&f);
                let m = lat.average(&f);
                let want_d = if deg == 0 { None } else { Some(deg - 1) };
                ensure!(d.degree() == want_d, "deg 𝔻f = {:?} for deg f = {deg} on {cs:?}", d.degree());
                ensure!(m.degree() == Some(deg), "deg 𝕄f = {:?} for deg f = {deg} on {cs:?}", m.degree());
                tested += 1;
            }
        }
    }
    Ok(format!("{tested} polynomials of degree 0…8"))
}

fn criterion_4() -> Outcome {
    let mut rng = rng(4);
    let trials = 20;
    for _ in 0..trials {
        let n_max = 13;
        let beta: Vec<Rational> = (0..=n_max).map(|_| small_rational(&mut rng)).collect();
        let mut gamma: Vec<Rational> = (0..=n_max).map(|_| nonzero_rational(&mut rng)).collect();
        gamma[0] = Rational::from_i64(1);
        let data = SmopData::from_recurrence(&beta, &gamma, n_max).map_err(|e| e.to_string())?;
        for n in 0..=12 {
            ensure!(liouville_defect(&data, n).is_zero(), "Liouville defect at n = {n}");
        }
        let u = moments_from_recurrence(&beta, &gamma, 2 * 12 + 1).map_err(|e| e.to_string())?;
        let (b2, g2) = recurrence_from_moments(&u, 12).map_err(|e| e.to_string())?;
        ensure!(b2 == beta[..=12] && g2 == gamma[..=12], "moments → recurrence round trip");
        let s = data.stieltjes();
        let by_rec = second_kind_by_recurrence(&data, &s);
        for n in 0..=10 {
            let qn = second_kind_series(&data, &s, n).map_err(|e| e.to_string())?;
            ensure!(qn.agrees_with(&by_rec[n]), "qₙ definition vs recurrence at n = {n}");
            ensure!(qn.leading_power() == Some(-(n as i64) - 1), "qₙ leading power at n = {n}: {:?}", qn.leading_power());
            ensure!(qn.leading_coeff() == Some(&data.gamma_product(n)), "qₙ leading coefficient at n = {n}");
        }
    }
    Ok(format!("{trials} random recurrences: Liouville n ≤ 12, round trip, qₙ = O(x^-n-1) n ≤ 10"))
}

fn passing_certificates() -> Result<Vec<(&'static str, RiccatiData<Rational>, Certificate<Rational>)>, String> {
    let lat = reference_lattice();
    let opts = CertifyOptions { n_max: N_MAX, truncation: TRUNCATION, degree_bounds: [4; 4] };
    let mut out = Vec::new();
    for (name, r) in [("Laguerre–Hahn", lh_fixture()), ("semi-classical", semi_classical_fixture())] {
        let cert = certify(&lat, &CertifyInput::Riccati(r.clone()), &opts);
        if let Some(bad) = cert.first_failure() {
            return Err(format!("{name}: {} {}: {}", bad.name, bad.verdict, bad.summary));
        }
        let deg = &cert.degrees;
        ensure!(deg.theta_hat_max <= deg.theta_hat_bound, "{name}: Θ̂ degree bound violated");
        out.push((name, r, cert));
    }
    Ok(out)
}

fn criterion_5(certs: &[(&str, RiccatiData<Rational>, Certificate<Rational>)]) -> Outcome {
    let names: Vec<String> = certs
        .iter()
        .map(|(name, _, c)| format!("{name} ({} checks, window x^-{})", c.checks.len(), c.check("gathered").unwrap().window.unwrap()))
        .collect();
    Ok(format!("n_max = {N_MAX}, N = {TRUNCATION}: {}", names.join(", ")))
}

fn criterion_6(certs: &[(&str, RiccatiData<Rational>, Certificate<Rational>)]) -> Outcome {
    let lat = reference_lattice();
    let half = Rational::from_i64(1) / &Rational::from_i64(2);
    for (name, r, cert) in certs {
        let c = cert.coeffs.as_ref().unwrap();
        let beta0 = recurrence_from_moments(&cert.moments, 1).unwrap().0[0].clone();
        let m0 = lat.average(&Poly::linear_root(&beta0));
        let half_c = r.c.scale(&half);
        let (lm1, l0) = (c.level(-1), c.level(0));
        ensure!(lm1.l == half_c, "{name}: l₋₁");
        ensure!(lm1.pi.is_zero(), "{name}: π₋₁");
        ensure!(lm1.theta == r.d, "{name}: Θ₋₁");
        ensure!(l0.pi == r.d.scale(&-half.clone()), "{name}: π₀");
        let want_l0 = &(-&(&m0 * &r.d)) - &half_c;
        ensure!(l0.l == want_l0, "{name}: l₀");
        let want_t0 = &(&(&r.a - &(lat.r() * &r.d)) - &(&(&want_l0 - &half_c) * &m0)) + &r.b;
        ensure!(l0.theta == want_t0, "{name}: Θ₀");
    }
    Ok(format!("{} instances: l₋₁, π₋₁, Θ₋₁, l₀, π₀, Θ₀ match", certs.len()))
}

fn criterion_7(certs: &[(&str, RiccatiData<Rational>, Certificate<Rational>)]) -> Outcome {
    let lat = reference_lattice();
    let ops = SeriesOps::new(&lat, TRUNCATION as i64 + 6).unwrap();
    for (name, r, cert) in certs {
        let data = SmopData::from_moments(&cert.moments, N_MAX).map_err(|e| e.to_string())?;
        let back = reconstruct_riccati(&lat, &data, cert.coeffs.as_ref().unwrap()).map_err(|e| format!("{name}: {e}"))?;
        ensure!(back.projectively_equal(r), "{name}: reconstructed data differs");
        ensure!(back.is_semi_classical() == r.is_semi_classical(), "{name}: B = 0 not preserved");
        let fit = fit_riccati(&ops, &LaurentSeries::stieltjes(&cert.moments), [4; 4]);
        ensure!(fit.contains(r), "{name}: fitted nullspace misses the data");
    }
    Ok(format!("{} instances reconstructed; fitted nullspaces contain the data", certs.len()))
}

fn criterion_8(certs: &[(&str, RiccatiData<Rational>, Certificate<Rational>)]) -> Outcome {
    let lat = reference_lattice();
    let opts = CertifyOptions { n_max: N_MAX, truncation: TRUNCATION, degree_bounds: [4; 4] };
    let bump = Rational::from_i64(1) / &Rational::from_i64(7);
    let mut flipped = 0;
    for (name, r, cert) in certs {
        for k in 1..=TRUNCATION {
            let mut u = cert.moments.clone();
            u[k] = u[k].clone() + &bump;
            let c = certify(&lat, &CertifyInput::RiccatiWithMoments(r.clone(), u), &opts);
            let bad = c.first_failure();
            ensure!(bad.is_some_and(|b| b.name == "riccati"), "{name}: perturbing u_{k} gives {:?}", bad.map(|b| &b.name));
            flipped += 1;
        }
    }
    let mut rng = rng(8);
    let ops = SeriesOps::new(&lat, TRUNCATION as i64 + 6).unwrap();
    let trials = 50;
    let empty = (0..trials)
        .filter(|_| {
            let u = random_moments(&mut rng, TRUNCATION + 1);
            fit_riccati(&ops, &LaurentSeries::stieltjes(&u), [4; 4]).candidates.is_empty()
        })
        .count();
    ensure!(empty * 100 >= 95 * trials, "only {empty}/{trials} random fits were empty");
    Ok(format!("{flipped} single-moment perturbations fail at the Riccati stage; {empty}/{trials} random fits empty"))
}

fn run(label: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panic: {}", msg.unwrap_or_default()))
    });
    let elapsed = start.elapsed();
    let result = match (result, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
        (r, _) => r,
    };
    let ok = result.is_ok();
    let (verdict, detail) = match result {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("{verdict} {label} [{:.2}s]: {detail}", elapsed.as_secs_f64());
    ok
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let mut ok = true;
    ok &= run("criterion 1 (operator laws)", secs(10), criterion_1);
    ok &= run("criterion 2 (lemma identities)", secs(5), criterion_2);
    ok &= run("criterion 3 (degree laws)", None, criterion_3);
    ok &= run("criterion 4 (orthogonal polynomials)", None, criterion_4);

    let start = Instant::now();
    let certs = panic::catch_unwind(passing_certificates).unwrap_or_else(|_| Err("panic while certifying".into()));
    let certify_time = start.elapsed();
    let certs = match certs {
        Ok(c) => c,
        Err(e) => {
            run("criterion 5 (end-to-end equivalence)", None, || Err(e.clone()));
            for label in ["criterion 6 (initial conditions)", "criterion 7 (reconstruction and fit)", "criterion 8 (negative controls)"] {
                run(label, None, || Err("no passing instance".into()));
            }
            return ExitCode::FAILURE;
        }
    };
    ok &= run("criterion 5 (end-to-end equivalence)", None, || {
        ensure!(certify_time < Duration::from_secs(60), "certification took {certify_time:.2?}");
        criterion_5(&certs).map(|d| format!("{d}; certified in {:.2}s", certify_time.as_secs_f64()))
    });
    ok &= run("criterion 6 (initial conditions)", None, || criterion_6(&certs));
    ok &= run("criterion 7 (reconstruction and fit)", None, || criterion_7(&certs));
    ok &= run("criterion 8 (negative controls)", None, || criterion_8(&certs));

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
