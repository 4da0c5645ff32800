use std::time::Instant;

use lhsnul::laguerre_hahn::{
    certify, corollary_coefficients, fit_riccati, magnus_data, magnus_step, riccati_residual, solve_moments_from_riccati,
    structure_coeffs_direct, CertifyInput, CertifyOptions, Level, RiccatiData,
};
use lhsnul::{format_rational, Error, Field, Lattice, LaurentSeries, Poly, SeriesOps, SmopData};
use serde_json::{json, Value};

use crate::problem::{Flavor, ProblemFile};
use crate::CliError;

/// A JSON document plus whether every mathematical check passed.
pub struct Report {
    pub json: Value,
    pub passed: bool,
}

pub const DEFAULT_N_MAX: usize = 8;
pub const DEFAULT_DEGREE_BOUND: usize = 4;

pub fn options(problem: &ProblemFile) -> CertifyOptions {
    let n_max = problem.options.n_max.unwrap_or(DEFAULT_N_MAX);
    CertifyOptions {
        n_max,
        truncation: problem.options.truncation.unwrap_or(2 * n_max + 12),
        degree_bounds: problem.options.degree_bounds.unwrap_or([DEFAULT_DEGREE_BOUND; 4]),
    }
}

fn poly_json<F: Field>(p: &Poly<F>) -> Value {
    Value::from(p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn riccati_json<F: Field>(r: &RiccatiData<F>) -> Value {
    json!({ "a": poly_json(&r.a), "b": poly_json(&r.b), "c": poly_json(&r.c), "d": poly_json(&r.d) })
}

fn level_json<F: Field>(level: &Level<F>) -> Value {
    json!({ "l": poly_json(&level.l), "pi": poly_json(&level.pi), "theta": poly_json(&level.theta) })
}

fn math_error(e: Error) -> CliError {
    CliError::Input(e.to_string())
}

fn error_json(e: &Error) -> Value {
    let n = match e {
        Error::NotLaguerreHahn { n, .. } | Error::NotQuasiDefinite { n } | Error::DegreeBoundExceeded { n, .. } => Some(*n),
        _ => None,
    };
    json!({ "message": e.to_string(), "n": n })
}

pub fn certify_cmd<F: Field>(problem: &ProblemFile, lat: &Lattice<F>, field: &str) -> Result<Report, CliError> {
    let input = match problem.flavor()? {
        Flavor::Riccati => CertifyInput::Riccati(problem.riccati()?.unwrap()),
        Flavor::Moments => CertifyInput::Moments(problem.moments()?.unwrap()),
        Flavor::Recurrence => {
            let (beta, gamma) = problem.recurrence()?.unwrap();
            CertifyInput::Recurrence { beta, gamma }
        }
        Flavor::RiccatiWithMoments => CertifyInput::RiccatiWithMoments(problem.riccati()?.unwrap(), problem.moments()?.unwrap()),
    };
    let opts = options(problem);
    let start = Instant::now();
    let cert = certify(lat, &input, &opts);
    let total = start.elapsed().as_secs_f64() * 1e3;

    let checks: Vec<Value> = cert
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "verdict": c.verdict.as_str(), "window": c.window, "residual_summary": c.summary }))
        .collect();
    let timings: serde_json::Map<String, Value> = cert.checks.iter().map(|c| (c.name.clone(), json!(c.millis))).collect();
    let d = &cert.degrees;
    Ok(Report {
        passed: cert.passed(),
        json: json!({
            "instance": problem,
            "field": field,
            "passed": cert.passed(),
            "riccati": cert.riccati.as_ref().map(riccati_json),
            "checks": checks,
            "degrees": {
                "theta_hat_bound": d.theta_hat_bound,
                "theta_hat_max": d.theta_hat_max,
                "l_max": d.l_max,
                "pi_max": d.pi_max,
                "theta_max": d.theta_max,
            },
            "timings": { "total_ms": total, "checks_ms": timings },
        }),
    })
}

pub fn fit_cmd<F: Field>(problem: &ProblemFile, lat: &Lattice<F>, field: &str) -> Result<Report, CliError> {
    let opts = options(problem);
    let moments = match problem.flavor()? {
        Flavor::Moments => problem.moments()?.unwrap(),
        Flavor::Recurrence => {
            let (beta, gamma) = problem.recurrence()?.unwrap();
            lhsnul::orthopoly::moments_from_recurrence(&beta, &gamma, opts.truncation).map_err(math_error)?
        }
        _ => return Err(CliError::Input("fit needs `moments` or `recurrence`, not `riccati`".into())),
    };
    let ops = SeriesOps::new(lat, moments.len() as i64 + 6).map_err(math_error)?;
    let s = LaurentSeries::stieltjes(&moments);
    let fit = fit_riccati(&ops, &s, opts.degree_bounds);
    let candidates: Vec<Value> = fit
        .candidates
        .iter()
        .map(|r| {
            let verified = riccati_residual(&ops, r, &s).is_ok_and(|res| res.is_zero_in_window());
            let degrees: Vec<Option<usize>> = r.polys().iter().map(|p| p.degree()).collect();
            json!({ "riccati": riccati_json(r), "degrees": degrees, "verified": verified })
        })
        .collect();
    let message = if candidates.is_empty() { "no relation found" } else { "relations found" };
    Ok(Report {
        passed: true,
        json: json!({
            "instance": problem,
            "field": field,
            "message": message,
            "degree_bounds": opts.degree_bounds,
            "equations": fit.equations,
            "nullspace_dimension": fit.dimension,
            "candidates": candidates,
        }),
    })
}

pub fn derive_cmd<F: Field>(problem: &ProblemFile, lat: &Lattice<F>, field: &str) -> Result<Report, CliError> {
    let opts = options(problem);
    let n_max = opts.n_max;
    if n_max == 0 {
        return Err(CliError::Input("derive needs n_max ≥ 1".into()));
    }
    let r = match problem.flavor()? {
        Flavor::Riccati | Flavor::RiccatiWithMoments => problem.riccati()?.unwrap(),
        _ => return Err(CliError::Input("derive needs `riccati` data".into())),
    };
    let trunc = opts.truncation.max(2 * n_max + 1);
    let ops = SeriesOps::new(lat, trunc as i64 + 6).map_err(math_error)?;
    let failure = |stage: &str, e: &Error| Report {
        passed: false,
        json: json!({ "instance": problem, "field": field, "stage": stage, "error": error_json(e) }),
    };
    let moments = match problem.moments()? {
        Some(u) => u,
        None => match solve_moments_from_riccati(&ops, &r, trunc) {
            Ok(u) => u,
            Err(e) => return Ok(failure("moments", &e)),
        },
    };
    let data = match SmopData::from_moments(&moments, n_max) {
        Ok(d) => d,
        Err(e) => return Ok(failure("recurrence", &e)),
    };
    let direct = match structure_coeffs_direct(lat, &r, &data, n_max) {
        Ok(c) => c,
        Err(e) => return Ok(failure("structure", &e)),
    };
    let residual_zero =
        riccati_residual(&ops, &r, &LaurentSeries::stieltjes(&moments)).is_ok_and(|res| res.is_zero_in_window());
    let recursion = corollary_coefficients(lat, &r, &data, n_max - 1).map_err(math_error)?;

    let mut agreement = residual_zero;
    let mut levels = Vec::new();
    for n in -1..=direct.max_level() {
        let agree = direct.level(n) == recursion.level(n);
        agreement &= agree;
        levels.push(json!({
            "n": n,
            "direct": level_json(direct.level(n)),
            "recursion": level_json(recursion.level(n)),
            "agree": agree,
        }));
    }
    let mut magnus = Vec::new();
    let one = Poly::one();
    for n in 0..n_max {
        let m = magnus_data(lat, &r, &data, &direct, n);
        let agree = n == 0 || magnus_step(lat, &magnus_data(lat, &r, &data, &direct, n - 1), &data.beta[n], &data.gamma[n], &one) == m;
        agreement &= agree;
        magnus.push(json!({
            "n": n,
            "a": poly_json(&m.a),
            "b": poly_json(&m.b),
            "c": poly_json(&m.c),
            "d": poly_json(&m.d),
            "agree": agree,
        }));
    }
    let beta: Vec<String> = data.beta.iter().map(|b| b.to_string()).collect();
    let gamma: Vec<String> = data.gamma.iter().map(|g| g.to_string()).collect();
    Ok(Report {
        passed: agreement,
        json: json!({
            "instance": problem,
            "field": field,
            "riccati_residual_zero": residual_zero,
            "agreement": agreement,
            "beta": beta,
            "gamma": gamma,
            "levels": levels,
            "magnus": magnus,
        }),
    })
}

/// Human-readable lattice report.
pub fn classify_report<F: Field>(lat: &Lattice<F>, points: usize, x0: f64) -> String {
    let mut out = String::new();
    let q_trace = lat.q_trace().map(format_rational).unwrap_or_else(|| "undefined".into());
    out.push_str(&format!(
        "{}, λ={}, τ={}\n",
        lat.class(),
        format_rational(lat.lambda()),
        format_rational(lat.tau())
    ));
    out.push_str(&format!("conic: {}\n", lat.conic()));
    out.push_str(&format!("p(x) = {}\n", lat.p_rational()));
    out.push_str(&format!("r(x) = {}\n", lat.r_rational()));
    out.push_str(&format!("q + 1/q = {q_trace}\n"));
    match lat.q_real() {
        Some((q1, q2)) => {
            out.push_str(&format!("q ≈ {q1}, 1/q ≈ {q2}\n"));
            if points > 0 {
                let xs = lat.lattice_points(x0, points);
                let shown: Vec<String> = xs.iter().map(|x| format!("{x:.6}")).collect();
                out.push_str(&format!("x(s), s = 0, 1/2, 1, … from x = {x0}: {}\n", shown.join(", ")));
            }
        }
        None => out.push_str("q is not real\n"),
    }
    out
}
