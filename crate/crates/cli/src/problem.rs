//! The JSON problem format. Every rational is a string such as `"-5/4"`;
//! polynomials are arrays of coefficients, constant term first.

use lhsnul::laguerre_hahn::RiccatiData;
use lhsnul::{parse_rational, Conic, Field, Poly, Rational};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub lattice: LatticeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub riccati: Option<RiccatiSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<RecurrenceSpec>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

/// The conic `â y² + 2b̂ xy + ĉ x² + 2d̂ y + 2ê x + f̂ = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub e: String,
    pub f: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RiccatiSpec {
    pub a: Vec<String>,
    #[serde(default)]
    pub b: Vec<String>,
    #[serde(default)]
    pub c: Vec<String>,
    #[serde(default)]
    pub d: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceSpec {
    pub beta: Vec<String>,
    pub gamma: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bounds: Option<[usize; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<String>,
}

impl Options {
    fn is_empty(&self) -> bool {
        self == &Options::default()
    }
}

/// Which inputs a problem carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Riccati,
    Moments,
    Recurrence,
    RiccatiWithMoments,
}

impl ProblemFile {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("{origin}:{}:{}: {e}", e.line(), e.column())))
    }

    #[cfg(test)]
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    pub fn flavor(&self) -> Result<Flavor, CliError> {
        match (&self.riccati, &self.moments, &self.recurrence) {
            (Some(_), None, None) => Ok(Flavor::Riccati),
            (None, Some(_), None) => Ok(Flavor::Moments),
            (None, None, Some(_)) => Ok(Flavor::Recurrence),
            (Some(_), Some(_), None) => Ok(Flavor::RiccatiWithMoments),
            (None, None, None) => Err(CliError::Input("no input: give one of `riccati`, `moments` or `recurrence`".into())),
            _ => Err(CliError::Input(
                "conflicting inputs: give exactly one of `riccati`, `moments`, `recurrence` (`riccati` may come with `moments`)".into(),
            )),
        }
    }

    pub fn conic(&self) -> Result<Conic, CliError> {
        let l = &self.lattice;
        let f = |name: &str, s: &str| rational(&format!("lattice.{name}"), s);
        Ok(Conic::new(f("a", &l.a)?, f("b", &l.b)?, f("c", &l.c)?, f("d", &l.d)?, f("e", &l.e)?, f("f", &l.f)?))
    }

    pub fn discriminant(&self) -> Result<Option<Rational>, CliError> {
        self.options.discriminant.as_deref().map(|s| rational("options.discriminant", s)).transpose()
    }

    pub fn riccati<F: Field>(&self) -> Result<Option<RiccatiData<F>>, CliError> {
        let Some(spec) = &self.riccati else { return Ok(None) };
        let a = poly("riccati.a", &spec.a)?;
        let b = poly("riccati.b", &spec.b)?;
        let c = poly("riccati.c", &spec.c)?;
        let d = poly("riccati.d", &spec.d)?;
        RiccatiData::new(a, b, c, d).map(Some).map_err(|e| CliError::Input(format!("riccati: {e}")))
    }

    pub fn moments<F: Field>(&self) -> Result<Option<Vec<F>>, CliError> {
        self.moments.as_deref().map(|m| values("moments", m)).transpose()
    }

    pub fn recurrence<F: Field>(&self) -> Result<Option<(Vec<F>, Vec<F>)>, CliError> {
        let Some(spec) = &self.recurrence else { return Ok(None) };
        Ok(Some((values("recurrence.beta", &spec.beta)?, values("recurrence.gamma", &spec.gamma)?)))
    }
}

fn rational(path: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn values<F: Field>(path: &str, items: &[String]) -> Result<Vec<F>, CliError> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| rational(&format!("{path}[{i}]"), s).map(|q| F::from_rational(&q)))
        .collect()
}

fn poly<F: Field>(path: &str, items: &[String]) -> Result<Poly<F>, CliError> {
    values(path, items).map(Poly::new)
}
