//! Coefficient fields.
//!
//! Everything in this crate is generic over [`Field`]. Three implementations
//! ship with it: [`Rational`] (exact, the base field Q), [`QuadNumber`]
//! (exact, a real quadratic extension Q(√d)) and `f64` (approximate, only
//! useful for quick numerical cross-checks since equality tests become
//! meaningless under rounding).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Arbitrary precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// A commutative field with exact (or at least total) division.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Embeds a rational number.
    fn from_rational(q: &Rational) -> Self;

    /// Positive square root of a positive rational `q`, if it lies in the
    /// field. `discriminant` pins the extension for quadratic fields; other
    /// fields ignore it.
    fn sqrt_rational(q: &Rational, discriminant: Option<&Rational>) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Whether results in this field can be compared for exact equality.
    fn is_exact() -> bool {
        true
    }
}

impl Field for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn sqrt_rational(q: &Rational, _discriminant: Option<&Rational>) -> Option<Self> {
        rational_sqrt(q)
    }
}

impl Field for f64 {
    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn sqrt_rational(q: &Rational, _discriminant: Option<&Rational>) -> Option<Self> {
        let v = Self::from_rational(q);
        (v >= 0.0).then(|| v.sqrt())
    }

    fn is_exact() -> bool {
        false
    }
}

/// Exact square root of a rational number, when it is rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = BigInt::from(10u32).pow(frac.len() as u32);
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    BigInt::from_str(t).map(Rational::from_integer).map_err(|_| bad())
}

/// `"p/q"` or `"p"`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Splits an integer `n` into `(k, s)` with `n = k² s` and `s` free of the
/// square factors found by trial division (and a trailing perfect square).
fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rest = n.abs();
    let mut k = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &p * &p <= rest && p <= limit {
        let sq = &p * &p;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            k *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        k *= root;
        rest = BigInt::one();
    }
    (k, sign * rest)
}

/// Canonical square class of a rational: the integer `s` with `q = k² s`
/// for rational `k`. Zero and perfect squares map to `1`.
pub fn square_class(q: &Rational) -> (Rational, BigInt) {
    if q.is_zero() {
        return (Rational::zero(), BigInt::one());
    }
    // q = n/m = n m / m², so √q = √(n m) / m.
    let (k, s) = square_split(&(q.numer() * q.denom()));
    (Rational::new(k, q.denom().clone()), s)
}

/// An element `a + b√d` of Q(√d).
///
/// `d` is a canonical square class (see [`square_class`]); `d = 1` denotes an
/// element of Q carrying no extension. Rational elements combine freely with
/// elements of any extension, while two genuinely irrational operands must
/// share `d`.
#[derive(Clone, Debug)]
pub struct QuadNumber {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl QuadNumber {
    /// `a + b√d`, canonicalizing the square class of `d`.
    pub fn new(a: Rational, b: Rational, d: &Rational) -> Self {
        let (k, s) = square_class(d);
        if s.is_one() {
            return Self::rational(a + b * k);
        }
        Self { a, b: b * k, d: s }.normalized()
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), d: BigInt::one() }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    /// `a² − d b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone())
    }

    /// Value in the real embedding with `√d > 0` (NaN for `d < 0` surds).
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = BigInt::one();
        }
        self
    }

    fn common_d(&self, other: &Self) -> BigInt {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "mixing elements of different quadratic fields");
                self.d.clone()
            }
        }
    }
}

impl PartialEq for QuadNumber {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadNumber {}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&format_rational(&self.a));
        }
        let surd = format!("{}*sqrt({})", format_rational(&self.b.abs()), self.d);
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => f.write_str(&surd),
            (true, true) => write!(f, "-{surd}"),
            (false, neg) => {
                write!(f, "{}{}{}", format_rational(&self.a), if neg { "-" } else { "+" }, surd)
            }
        }
    }
}

impl FromStr for QuadNumber {
    type Err = Error;

    /// Accepts `"p/q"` or `"a+b*sqrt(d)"` / `"a-b*sqrt(d)"` / `"b*sqrt(d)"`,
    /// the forms produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.contains("sqrt(") && !t.contains("*sqrt(") {
            t = t.replacen("sqrt(", "1*sqrt(", 1);
        }
        let Some(open) = t.find("*sqrt(") else {
            return parse_rational(&t).map(Self::rational);
        };
        let bad = || Error::Parse(format!("invalid quadratic number {s:?}"));
        let close = t.rfind(')').ok_or_else(bad)?;
        let d = parse_rational(&t[open + 6..close])?;
        let head = &t[..open];
        // split head into the rational part and the signed surd coefficient
        let cut = head.rfind(['+', '-']).filter(|&i| i > 0);
        let (a, b) = match cut {
            Some(i) => (parse_rational(&head[..i])?, parse_rational(&head[i..])?),
            None => (Rational::zero(), parse_rational(head)?),
        };
        Ok(Self::new(a, b, &d))
    }
}

impl Zero for QuadNumber {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadNumber {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Neg for QuadNumber {
    type Output = Self;

    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b, d: self.d }
    }
}

impl<'a> Add<&'a QuadNumber> for QuadNumber {
    type Output = QuadNumber;

    fn add(self, rhs: &'a QuadNumber) -> QuadNumber {
        if rhs.b.is_zero() {
            return QuadNumber { a: self.a + &rhs.a, b: self.b, d: self.d };
        }
        let d = self.common_d(rhs);
        QuadNumber { a: self.a + &rhs.a, b: self.b + &rhs.b, d }.normalized()
    }
}

impl<'a> Sub<&'a QuadNumber> for QuadNumber {
    type Output = QuadNumber;

    fn sub(self, rhs: &'a QuadNumber) -> QuadNumber {
        if rhs.b.is_zero() {
            return QuadNumber { a: self.a - &rhs.a, b: self.b, d: self.d };
        }
        let d = self.common_d(rhs);
        QuadNumber { a: self.a - &rhs.a, b: self.b - &rhs.b, d }.normalized()
    }
}

impl<'a> Mul<&'a QuadNumber> for QuadNumber {
    type Output = QuadNumber;

    fn mul(self, rhs: &'a QuadNumber) -> QuadNumber {
        match (self.b.is_zero(), rhs.b.is_zero()) {
            (true, true) => QuadNumber::rational(self.a * &rhs.a),
            (true, false) => {
                QuadNumber { a: &self.a * &rhs.a, b: self.a * &rhs.b, d: rhs.d.clone() }.normalized()
            }
            (false, true) => QuadNumber { a: self.a * &rhs.a, b: self.b * &rhs.a, d: self.d }.normalized(),
            (false, false) => {
                let d = self.common_d(rhs);
                let dd = Rational::from_integer(d.clone());
                let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
                let b = self.a * &rhs.b + self.b * &rhs.a;
                QuadNumber { a, b, d }.normalized()
            }
        }
    }
}

impl<'a> Div<&'a QuadNumber> for QuadNumber {
    type Output = QuadNumber;

    fn div(self, rhs: &'a QuadNumber) -> QuadNumber {
        if rhs.b.is_zero() {
            assert!(!rhs.a.is_zero(), "division by zero");
            return QuadNumber { a: self.a / &rhs.a, b: self.b / &rhs.a, d: self.d };
        }
        let norm = rhs.norm();
        let num = self * &rhs.conjugate();
        QuadNumber { a: num.a / &norm, b: num.b / &norm, d: num.d }.normalized()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QuadNumber> for QuadNumber {
            type Output = QuadNumber;
            fn $m(self, rhs: QuadNumber) -> QuadNumber {
                self.$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Field for QuadNumber {
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }

    fn sqrt_rational(q: &Rational, discriminant: Option<&Rational>) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if let Some(k) = rational_sqrt(q) {
            return Some(Self::rational(k));
        }
        let (k, s) = square_class(q);
        if let Some(d) = discriminant {
            // only allowed when q and d share a square class
            let (_, sd) = square_class(d);
            if sd != s {
                return None;
            }
        }
        Some(Self { a: Rational::zero(), b: k, d: s })
    }
}
