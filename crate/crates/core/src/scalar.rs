//! Scalar modes shared by behaviors, functionals and the LP solver.
//!
//! Every table of numbers in the crate is stored either as exact rationals
//! or as `f64`. Operations that mix the two promote to `f64`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Numeric field the generic algorithms run over.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// `true` for exact arithmetic, where all comparisons ignore tolerances.
    const EXACT: bool;

    fn to_f64(&self) -> f64;
    fn from_i64(v: i64) -> Self;
    /// Exact binary value of `x` for rationals (zero if not finite).
    fn from_float(x: f64) -> Self;
    fn from_rational(x: &Rational) -> Self;
    fn into_entries(values: Vec<Self>) -> Entries;
    fn into_value(self) -> Value;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_float(x: f64) -> Self {
        Rational::from_f64(x).unwrap_or_default()
    }
    fn from_rational(x: &Rational) -> Self {
        x.clone()
    }
    fn into_entries(values: Vec<Self>) -> Entries {
        Entries::Exact(values)
    }
    fn into_value(self) -> Value {
        Value::Exact(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_float(x: f64) -> Self {
        x
    }
    fn from_rational(x: &Rational) -> Self {
        Scalar::to_f64(x)
    }
    fn into_entries(values: Vec<Self>) -> Entries {
        Entries::Float(values)
    }
    fn into_value(self) -> Value {
        Value::Float(self)
    }
}

/// Shorthand for building exact rationals in code and tests.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Ok(i) = BigInt::from_str(s) {
        return Some(Rational::from_integer(i));
    }
    // Finite decimal literal, taken at face value (not via binary float).
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.')?;
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
        || (int_part.is_empty() && frac_part.is_empty())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num = BigInt::from_str(&digits).ok()?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(Rational::new(num * sign, den))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Exact-or-float mode tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode `{other}` (expected exact or float)")),
        }
    }
}

/// A single number in either mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => Scalar::to_f64(r),
            Value::Float(x) => *x,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Value::Exact(_) => Mode::Exact,
            Value::Float(_) => Mode::Float,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Float(_) => None,
        }
    }

    pub fn abs(&self) -> Value {
        match self {
            Value::Exact(r) => Value::Exact(r.abs()),
            Value::Float(x) => Value::Float(x.abs()),
        }
    }

    /// Exact equality when both sides are exact, otherwise `|a - b| <= tol`.
    pub fn approx_eq(&self, other: &Value, tol: f64) -> bool {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

/// Flat vector of numbers in one mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Entries {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

impl Entries {
    pub fn mode(&self) -> Mode {
        match self {
            Entries::Exact(_) => Mode::Exact,
            Entries::Float(_) => Mode::Float,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Entries::Exact(v) => v.len(),
            Entries::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn zeros(mode: Mode, len: usize) -> Entries {
        match mode {
            Mode::Exact => Entries::Exact(vec![Rational::zero(); len]),
            Mode::Float => Entries::Float(vec![0.0; len]),
        }
    }

    pub fn get(&self, i: usize) -> Value {
        match self {
            Entries::Exact(v) => Value::Exact(v[i].clone()),
            Entries::Float(v) => Value::Float(v[i]),
        }
    }

    pub fn get_f64(&self, i: usize) -> f64 {
        match self {
            Entries::Exact(v) => Scalar::to_f64(&v[i]),
            Entries::Float(v) => v[i],
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        match self {
            Entries::Exact(v) => v.iter().map(Scalar::to_f64).collect(),
            Entries::Float(v) => v.clone(),
        }
    }

    /// Converts exact entries to `f64`; float entries are returned unchanged.
    pub fn to_float(&self) -> Entries {
        Entries::Float(self.to_f64_vec())
    }

    pub fn as_exact(&self) -> Option<&[Rational]> {
        match self {
            Entries::Exact(v) => Some(v),
            Entries::Float(_) => None,
        }
    }

    pub fn as_float(&self) -> Option<&[f64]> {
        match self {
            Entries::Exact(_) => None,
            Entries::Float(v) => Some(v),
        }
    }

    pub fn scale(&self, factor: &Value) -> Entries {
        match (self, factor) {
            (Entries::Exact(v), Value::Exact(c)) => Entries::Exact(v.iter().map(|x| x * c).collect()),
            _ => {
                let c = factor.to_f64();
                Entries::Float(self.to_f64_vec().into_iter().map(|x| x * c).collect())
            }
        }
    }

    pub fn neg(&self) -> Entries {
        match self {
            Entries::Exact(v) => Entries::Exact(v.iter().map(|x| -x).collect()),
            Entries::Float(v) => Entries::Float(v.iter().map(|x| -x).collect()),
        }
    }

    pub fn slice(&self, start: usize, end: usize) -> Entries {
        match self {
            Entries::Exact(v) => Entries::Exact(v[start..end].to_vec()),
            Entries::Float(v) => Entries::Float(v[start..end].to_vec()),
        }
    }

    /// Largest entrywise absolute difference, computed exactly when both sides are exact.
    pub fn max_abs_diff(&self, other: &Entries) -> f64 {
        assert_eq!(self.len(), other.len(), "length mismatch");
        match (self, other) {
            (Entries::Exact(a), Entries::Exact(b)) => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .max()
                .map(|m| Scalar::to_f64(&m))
                .unwrap_or(0.0),
            _ => self
                .to_f64_vec()
                .iter()
                .zip(other.to_f64_vec())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("3/6"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("-2"), Some(ratio(-2, 1)));
        assert_eq!(parse_rational("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("-.5"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&ratio(4, 2)), "2");
    }

    #[test]
    fn mixed_values_compare_as_float() {
        let a = Value::Exact(ratio(1, 3));
        let b = Value::Float(1.0 / 3.0);
        assert!(a.approx_eq(&b, 1e-15));
        assert!(!Value::Exact(ratio(1, 3)).approx_eq(&Value::Exact(ratio(1, 2)), 1.0));
    }
}
