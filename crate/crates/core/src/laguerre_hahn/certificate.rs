use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use super::{
    corollary_coefficients, fit_riccati, gathered_relations, initial_levels, magnus_data, magnus_step, reconstruct_riccati,
    riccati_residual, second_kind_relations, solve_moments_from_riccati, structure_coeffs_direct, telescopes,
    verify_structure_relations, RiccatiData, StructureCoeffs,
};
use crate::field::Field;
use crate::lattice::Lattice;
use crate::operators::SeriesOps;
use crate::orthopoly::{moments_from_recurrence, SmopData};
use crate::poly::Poly;
use crate::series::LaurentSeries;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The check could not run (an earlier stage failed).
    Skipped,
    /// The computation itself failed, e.g. the window was too small.
    Error,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
            Verdict::Error => "error",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One verified statement.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    /// For series checks, the worst truncation order `N` (residual known
    /// through `x^{-N}`) over all levels checked.
    pub window: Option<i64>,
    pub summary: String,
    pub millis: f64,
}

/// What the pipeline starts from. Riccati data alone means the moments are
/// solved for; moments or a recurrence alone means the Riccati data is
/// fitted; Riccati data together with moments certifies that pair.
#[derive(Clone, Debug)]
pub enum CertifyInput<F> {
    Riccati(RiccatiData<F>),
    Moments(Vec<F>),
    Recurrence { beta: Vec<F>, gamma: Vec<F> },
    RiccatiWithMoments(RiccatiData<F>, Vec<F>),
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub n_max: usize,
    /// Number of moments beyond `u₀` used, i.e. the series is known through
    /// `x^{-truncation-1}`.
    pub truncation: usize,
    /// Degree bounds for fitting `(A, B, C, D)`.
    pub degree_bounds: [usize; 4],
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { n_max: 8, truncation: 28, degree_bounds: [4; 4] }
    }
}

/// Degree information collected along the way.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Degrees {
    /// `max{deg A − 2, deg B − 2, deg C − 1}`.
    pub theta_hat_bound: Option<i64>,
    pub theta_hat_max: Option<i64>,
    pub l_max: Option<i64>,
    pub pi_max: Option<i64>,
    pub theta_max: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct Certificate<F> {
    pub riccati: Option<RiccatiData<F>>,
    pub moments: Vec<F>,
    pub coeffs: Option<StructureCoeffs<F>>,
    pub checks: Vec<Check>,
    pub degrees: Degrees,
    pub options: CertifyOptions,
}

impl<F> Certificate<F> {
    /// True when every check passed.
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// First check that did not pass.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.verdict != Verdict::Pass)
    }
}

/// Names of all checks, in pipeline order.
pub const CHECK_NAMES: [&str; 16] = [
    "moments",
    "riccati-data",
    "riccati",
    "quasi-definite",
    "structure-direct",
    "initial-conditions",
    "structure-(1)",
    "structure-(2)",
    "second-kind-(1)",
    "second-kind-(2)",
    "gathered",
    "corollary",
    "magnus",
    "telescopes",
    "reconstruction",
    "fit",
];

type Outcome = (Verdict, Option<i64>, String);

struct Recorder {
    checks: Vec<Check>,
    gated: bool,
}

impl Recorder {
    /// Runs a check unless an earlier gating check failed.
    fn run(&mut self, name: &str, gate: bool, f: impl FnOnce() -> Result<Outcome, Error>) -> bool {
        if self.gated {
            self.checks.push(Check {
                name: name.into(),
                verdict: Verdict::Skipped,
                window: None,
                summary: "skipped after an earlier failure".into(),
                millis: 0.0,
            });
            return false;
        }
        let start = Instant::now();
        let (verdict, window, summary) = f().unwrap_or_else(|e| (Verdict::Error, None, e.to_string()));
        let millis = start.elapsed().as_secs_f64() * 1e3;
        let ok = verdict == Verdict::Pass;
        if gate && !ok {
            self.gated = true;
        }
        self.checks.push(Check { name: name.into(), verdict, window, summary, millis });
        ok
    }
}

fn pass(window: Option<i64>, summary: impl Into<String>) -> Result<Outcome, Error> {
    Ok((Verdict::Pass, window, summary.into()))
}

fn fail(window: Option<i64>, summary: impl Into<String>) -> Result<Outcome, Error> {
    Ok((Verdict::Fail, window, summary.into()))
}

fn worst_window(floors: impl Iterator<Item = Option<i64>>) -> Option<i64> {
    floors.flatten().max().map(|f| -f)
}

/// Runs the whole pipeline: moments (solved, given or from a recurrence),
/// Riccati data (given or fitted), the Riccati residual, quasi-definiteness,
/// the direct structure coefficients and every relation and recursion built
/// on them. Stage errors are recorded, never propagated.
pub fn certify<F: Field>(lat: &Lattice<F>, input: &CertifyInput<F>, options: &CertifyOptions) -> Certificate<F> {
    let n_max = options.n_max;
    let trunc = options.truncation.max(2 * n_max + 1);
    let mut rec = Recorder { checks: Vec::new(), gated: false };
    let mut cert = Certificate {
        riccati: None,
        moments: Vec::new(),
        coeffs: None,
        checks: Vec::new(),
        degrees: Degrees::default(),
        options: options.clone(),
    };

    let ops = match SeriesOps::new(lat, trunc as i64 + 6) {
        Ok(o) => Some(o),
        Err(e) => {
            rec.run("moments", true, || Err(e));
            None
        }
    };

    let mut moments = Vec::new();
    if let Some(ops) = &ops {
        rec.run("moments", true, || {
            moments = match input {
                CertifyInput::Riccati(r) => solve_moments_from_riccati(ops, r, trunc)?,
                CertifyInput::Moments(u) | CertifyInput::RiccatiWithMoments(_, u) => u.clone(),
                CertifyInput::Recurrence { beta, gamma } => moments_from_recurrence(beta, gamma, trunc)?,
            };
            if moments.first().is_none_or(|u0| !u0.is_one()) {
                return fail(None, "u₀ must equal 1");
            }
            pass(Some(moments.len() as i64), format!("u₀…u_{}", moments.len() - 1))
        });
    }
    let s = LaurentSeries::stieltjes(&moments);

    let mut riccati = None;
    rec.run("riccati-data", true, || {
        let ops = ops.as_ref().unwrap();
        match input {
            CertifyInput::Riccati(r) | CertifyInput::RiccatiWithMoments(r, _) => {
                riccati = Some(r.clone());
                pass(None, "given")
            }
            _ => {
                let fit = fit_riccati(ops, &s, options.degree_bounds);
                match fit.candidates.first() {
                    Some(r) => {
                        riccati = Some(r.clone());
                        pass(None, format!("fitted; {} candidate(s), first used", fit.candidates.len()))
                    }
                    None => fail(None, format!("no relation within degree bounds {:?}", options.degree_bounds)),
                }
            }
        }
    });
    cert.riccati = riccati.clone();

    rec.run("riccati", true, || {
        let (ops, r) = (ops.as_ref().unwrap(), riccati.as_ref().unwrap());
        let res = riccati_residual(ops, r, &s)?;
        let window = res.truncation_order();
        match res.first_nonzero() {
            None => pass(window, "residual vanishes"),
            Some((k, _)) => {
                let index = r.sigma() - k;
                fail(window, format!("first nonzero residual coefficient at x^{k} (involves moments up to u_{index})"))
            }
        }
    });

    let mut data = None;
    rec.run("quasi-definite", true, || {
        let d = SmopData::from_moments(&moments, n_max)?;
        data = Some(d);
        pass(None, format!("β, γ through n = {n_max}"))
    });

    let mut coeffs = None;
    rec.run("structure-direct", true, || {
        let (r, data) = (riccati.as_ref().unwrap(), data.as_ref().unwrap());
        let c = structure_coeffs_direct(lat, r, data, n_max)?;
        let th_max = (0..n_max as i64).map(|n| c.theta_hat(n).degree_or_neg()).max().unwrap_or(-1).max(-1);
        let (l, p, t) = c.observed_degrees();
        cert.degrees = Degrees {
            theta_hat_bound: Some(r.sigma()),
            theta_hat_max: Some(th_max),
            l_max: Some(l),
            pi_max: Some(p),
            theta_max: Some(t),
        };
        coeffs = Some(c);
        pass(None, format!("levels −1…{}; deg Θ̂ ≤ {} (bound {})", n_max as i64 - 1, th_max, r.sigma()))
    });

    // everything below is independent of the other checks
    let r = riccati.clone();
    let ctx = || (r.as_ref().unwrap(), data.as_ref().unwrap(), coeffs.as_ref().unwrap(), ops.as_ref().unwrap());

    rec.run("initial-conditions", false, || {
        let (r, data, c, _) = ctx();
        let init = initial_levels(lat, r, data);
        if c.level(-1) == &init[0] && c.level(0) == &init[1] {
            pass(None, "levels −1 and 0 match the closed forms")
        } else {
            fail(None, "levels −1/0 differ from the closed forms")
        }
    });

    for (name, first) in [("structure-(1)", true), ("structure-(2)", false)] {
        rec.run(name, false, || {
            let (r, data, c, _) = ctx();
            let bad: Vec<usize> = (1..=n_max)
                .into_par_iter()
                .filter(|&n| {
                    let res = verify_structure_relations(lat, r, data, c, n);
                    let pair = if first { &res.first } else { &res.second };
                    !pair.iter().all(|s| s.is_zero())
                })
                .collect();
            if bad.is_empty() {
                pass(None, format!("exact for 1 ≤ n ≤ {n_max}"))
            } else {
                fail(None, format!("nonzero residual at n = {bad:?}"))
            }
        });
    }

    let levels: Vec<usize> = (0..n_max).collect();
    // both variants come out of one computation, timed under the first
    let mut second_kind = Vec::new();
    for (name, first) in [("second-kind-(1)", true), ("second-kind-(2)", false)] {
        rec.run(name, false, || {
            if first {
                let (r, data, c, ops) = ctx();
                second_kind = levels.par_iter().map(|&n| second_kind_relations(ops, r, data, c, &s, n)).collect();
            }
            let mut floors = Vec::new();
            let mut bad = Vec::new();
            for (n, res) in second_kind.iter().enumerate() {
                let res = res.clone()?;
                let series = if first { &res.first } else { &res.second };
                floors.push(series.floor());
                if !series.is_zero_in_window() {
                    bad.push(n);
                }
            }
            let window = worst_window(floors.into_iter());
            if bad.is_empty() {
                pass(window, format!("zero within window for 0 ≤ n ≤ {}", n_max as i64 - 1))
            } else {
                fail(window, format!("nonzero residual at n = {bad:?}"))
            }
        });
    }

    rec.run("gathered", false, || {
        let (r, data, c, ops) = ctx();
        let results: Vec<Result<_, Error>> = levels.par_iter().map(|&n| gathered_relations(ops, r, data, c, &s, n)).collect();
        let mut floors = Vec::new();
        let mut bad = Vec::new();
        for (n, res) in results.into_iter().enumerate() {
            let res = res?;
            floors.push(res.q.floor());
            if !res.is_zero() {
                bad.push(n);
            }
        }
        let window = worst_window(floors.into_iter());
        if bad.is_empty() {
            pass(window, format!("polynomial identities exact, series identity zero in window, 0 ≤ n ≤ {}", n_max as i64 - 1))
        } else {
            fail(window, format!("nonzero residual at n = {bad:?}"))
        }
    });

    rec.run("corollary", false, || {
        let (r, data, c, _) = ctx();
        let rc = corollary_coefficients(lat, r, data, n_max - 1)?;
        match (0..=c.max_level()).find(|&n| rc.level(n) != c.level(n)) {
            None => pass(None, "recursion reproduces the direct coefficients"),
            Some(n) => fail(None, format!("first disagreement at level {n}")),
        }
    });

    rec.run("magnus", false, || {
        let (r, data, c, _) = ctx();
        let one = Poly::one();
        let bad = (0..n_max.saturating_sub(1)).find(|&n| {
            let m = magnus_data(lat, r, data, c, n);
            magnus_step(lat, &m, &data.beta[n + 1], &data.gamma[n + 1], &one) != magnus_data(lat, r, data, c, n + 1)
        });
        match bad {
            None => pass(None, "ϱ = 1 steps reproduce the data of every level"),
            Some(n) => fail(None, format!("step from level {n} disagrees")),
        }
    });

    rec.run("telescopes", false, || {
        let (_, data, c, _) = ctx();
        let t = telescopes(lat, data, c);
        if t.is_zero() {
            pass(None, "Lₙ ≡ 0 and Tₙ₊₁ = −Σ Θₖ₋₁/γₖ")
        } else {
            fail(None, "telescoping sums do not vanish")
        }
    });

    rec.run("reconstruction", false, || {
        let (r, data, c, _) = ctx();
        let back = reconstruct_riccati(lat, data, c)?;
        if back.projectively_equal(r) {
            pass(None, "(A, B, C, D) recovered up to scalar")
        } else {
            fail(None, "recovered data differs")
        }
    });

    rec.run("fit", false, || {
        let (r, _, _, ops) = ctx();
        let mut bounds = options.degree_bounds;
        for (b, p) in bounds.iter_mut().zip(r.polys()) {
            *b = (*b).max(p.degree().unwrap_or(0));
        }
        let fit = fit_riccati(ops, &s, bounds);
        if fit.contains(r) {
            pass(None, format!("nullspace of dimension {} contains the data ({} equations)", fit.dimension, fit.equations))
        } else {
            fail(None, "the data is not in the fitted nullspace")
        }
    });

    cert.checks = rec.checks;
    cert.moments = moments;
    cert.coeffs = coeffs;
    cert
}
