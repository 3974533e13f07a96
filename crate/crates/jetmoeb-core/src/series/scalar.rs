//! Scalar coefficient types for jet arithmetic.
//!
//! The default backend is exact: `Rational` is an arbitrary-precision
//! reduced fraction and `ComplexExact` is a pair of rationals. Every
//! operation in the crate is generic over the [`Coefficient`] trait, so the
//! same algorithms also run over `C64`, a double-precision complex backend
//! with tolerance-based comparison for speed experiments. Exact backends
//! compare exactly; only `C64` interprets `approx_eq` loosely.

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::de::{self, DeserializeOwned, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Exact rational scalar: arbitrary-precision, always reduced, positive
/// denominator. Backed by `num::BigRational`, whose constructor maintains
/// both normalizations.
pub type Rational = BigRational;

/// Shorthand for the reduced fraction `num/den`.
///
/// Panics if `den == 0`; intended for literals in code and tests, not for
/// untrusted input (use [`parse_rational`] for that).
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "rat: zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` with optional sign, without panicking on any
/// input. Rejects zero denominators and empty or non-numeric parts.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num_str.trim())
        .map_err(|_| format!("invalid integer `{num_str}` in rational `{s}`"))?;
    let den = BigInt::from_str(den_str.trim())
        .map_err(|_| format!("invalid integer `{den_str}` in rational `{s}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in rational `{s}`"));
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Field of scalars a jet can be built over.
///
/// Arithmetic is by value (implementors are cheap to clone or the caller
/// already owns them). `inverse` returns `None` exactly on zero scalars, so
/// division sites can surface domain errors instead of panicking. For exact
/// backends `approx_eq` coincides with `==`; the float backend compares up
/// to a relative tolerance.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// The fraction `num/den`. Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse; `None` iff the scalar is zero (up to the
    /// backend's zero test).
    fn inverse(&self) -> Option<Self>;
    /// Backend equality: exact for exact scalars, tolerance-based for floats.
    fn approx_eq(&self, other: &Self) -> bool;
}

/// Exact complex scalar `re + im*i` over [`Rational`] parts.
///
/// Serializes as the bare string `"p/q"` when the imaginary part vanishes
/// and as `{"re": "p/q", "im": "p/q"}` otherwise; both forms (and full
/// literals such as `"1/2-3/4i"`) are accepted on input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexExact {
    re: Rational,
    im: Rational,
}

impl ComplexExact {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexExact { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        ComplexExact {
            re,
            im: rat_int(0),
        }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ComplexExact {
            re: rat_int(0),
            im: rat_int(1),
        }
    }

    /// Parses a complex literal: `"p/q"`, `"p/q+r/si"`, `"p/q-r/si"`,
    /// `"r/si"`, `"i"`, `"-i"`. No whitespace inside components.
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty complex literal".to_string());
        }
        if !s.ends_with('i') {
            return Ok(ComplexExact::from_real(parse_rational(s)?));
        }
        let body = &s[..s.len() - 1];
        // Split off the imaginary component at the last top-level sign; a
        // sign at position 0 belongs to the single remaining component.
        let split = body
            .char_indices()
            .rev()
            .find(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
            .map(|(idx, _)| idx);
        let (re_str, im_str) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im = match im_str {
            "" | "+" => rat_int(1),
            "-" => rat_int(-1),
            _ => parse_rational(im_str)?,
        };
        let re = parse_rational(re_str)?;
        Ok(ComplexExact { re, im })
    }
}

impl Add for ComplexExact {
    type Output = ComplexExact;
    fn add(self, rhs: ComplexExact) -> ComplexExact {
        ComplexExact {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexExact {
    type Output = ComplexExact;
    fn sub(self, rhs: ComplexExact) -> ComplexExact {
        ComplexExact {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for ComplexExact {
    type Output = ComplexExact;
    fn mul(self, rhs: ComplexExact) -> ComplexExact {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        ComplexExact { re, im }
    }
}

impl Neg for ComplexExact {
    type Output = ComplexExact;
    fn neg(self) -> ComplexExact {
        ComplexExact {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for ComplexExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            return write!(f, "{}", format_rational(&self.re));
        }
        if Zero::is_zero(&self.re) {
            return write!(f, "{}i", format_rational(&self.im));
        }
        if self.im.is_negative() {
            let abs = -self.im.clone();
            write!(
                f,
                "{}-{}i",
                format_rational(&self.re),
                format_rational(&abs)
            )
        } else {
            write!(
                f,
                "{}+{}i",
                format_rational(&self.re),
                format_rational(&self.im)
            )
        }
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }

    fn one() -> Self {
        <Rational as One>::one()
    }

    fn from_int(n: i64) -> Self {
        rat_int(n)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        rat(num, den)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
}

impl Coefficient for ComplexExact {
    fn zero() -> Self {
        ComplexExact::from_real(rat_int(0))
    }

    fn one() -> Self {
        ComplexExact::from_real(rat_int(1))
    }

    fn from_int(n: i64) -> Self {
        ComplexExact::from_real(rat_int(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        ComplexExact::from_real(rat(num, den))
    }

    fn from_rational(r: &Rational) -> Self {
        ComplexExact::from_real(r.clone())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(ComplexExact {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        })
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
}

impl Serialize for ComplexExact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if Zero::is_zero(&self.im) {
            serializer.serialize_str(&format_rational(&self.re))
        } else {
            let mut st = serializer.serialize_struct("ComplexExact", 2)?;
            st.serialize_field("re", &format_rational(&self.re))?;
            st.serialize_field("im", &format_rational(&self.im))?;
            st.end()
        }
    }
}

struct ComplexExactVisitor;

impl<'de> Visitor<'de> for ComplexExactVisitor {
    type Value = ComplexExact;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational string like \"3/2\" or an object {\"re\", \"im\"}")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<ComplexExact, E> {
        ComplexExact::parse(v).map_err(E::custom)
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<ComplexExact, A::Error> {
        let mut re: Option<String> = None;
        let mut im: Option<String> = None;
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "re" => re = Some(map.next_value()?),
                "im" => im = Some(map.next_value()?),
                other => return Err(de::Error::unknown_field(other, &["re", "im"])),
            }
        }
        let re = parse_rational(&re.ok_or_else(|| de::Error::missing_field("re"))?)
            .map_err(de::Error::custom)?;
        let im = parse_rational(&im.ok_or_else(|| de::Error::missing_field("im"))?)
            .map_err(de::Error::custom)?;
        Ok(ComplexExact { re, im })
    }
}

impl<'de> Deserialize<'de> for ComplexExact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(ComplexExactVisitor)
    }
}

/// Default relative tolerance of the float backend.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Double-precision complex backend.
///
/// `is_zero` tests `|z| <= tol` absolutely and `approx_eq` tests
/// `|a - b| <= tol * max(1, |a|, |b|)` with the default tolerance; use
/// [`C64::approx_eq_tol`] to override the tolerance at a comparison site.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct C64(pub Complex64);

impl C64 {
    pub fn new(re: f64, im: f64) -> Self {
        C64(Complex64::new(re, im))
    }

    /// Tolerance-configurable comparison: `|a - b| <= tol * max(1, |a|, |b|)`.
    pub fn approx_eq_tol(&self, other: &Self, tol: f64) -> bool {
        let scale = 1f64.max(self.0.norm()).max(other.0.norm());
        (self.0 - other.0).norm() <= tol * scale
    }
}

/// Rounds an exact complex scalar to the float backend.
pub fn to_c64(z: &ComplexExact) -> C64 {
    let re = z.re().to_f64().unwrap_or(f64::NAN);
    let im = z.im().to_f64().unwrap_or(f64::NAN);
    C64::new(re, im)
}

impl Add for C64 {
    type Output = C64;
    fn add(self, rhs: C64) -> C64 {
        C64(self.0 + rhs.0)
    }
}

impl Sub for C64 {
    type Output = C64;
    fn sub(self, rhs: C64) -> C64 {
        C64(self.0 - rhs.0)
    }
}

impl Mul for C64 {
    type Output = C64;
    fn mul(self, rhs: C64) -> C64 {
        C64(self.0 * rhs.0)
    }
}

impl Neg for C64 {
    type Output = C64;
    fn neg(self) -> C64 {
        C64(-self.0)
    }
}

impl fmt::Display for C64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Coefficient for C64 {
    fn zero() -> Self {
        C64(Complex64::new(0.0, 0.0))
    }

    fn one() -> Self {
        C64(Complex64::new(1.0, 0.0))
    }

    fn from_int(n: i64) -> Self {
        C64(Complex64::new(n as f64, 0.0))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "from_ratio: zero denominator");
        C64(Complex64::new(num as f64 / den as f64, 0.0))
    }

    fn from_rational(r: &Rational) -> Self {
        C64(Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0))
    }

    fn is_zero(&self) -> bool {
        self.0.norm() <= DEFAULT_TOLERANCE
    }

    fn inverse(&self) -> Option<Self> {
        if Coefficient::is_zero(self) {
            None
        } else {
            Some(C64(self.0.inv()))
        }
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self.approx_eq_tol(other, DEFAULT_TOLERANCE)
    }
}

#[derive(Serialize, Deserialize)]
struct C64Repr {
    re: f64,
    im: f64,
}

impl Serialize for C64 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        C64Repr {
            re: self.0.re,
            im: self.0.im,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for C64 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = C64Repr::deserialize(deserializer)?;
        Ok(C64::new(repr.re, repr.im))
    }
}
