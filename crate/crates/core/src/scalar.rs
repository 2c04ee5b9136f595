//! Scalar fields.
//!
//! Everything above this module is written against [`Field`]. Exact work uses
//! [`Rational`] (arbitrary-precision, always in lowest terms); `f64`/`f32`
//! instances exist for numeric cross-checks such as finite differences, where
//! approximate zero tests are acceptable.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Exact rationals: numerator/denominator in lowest terms, denominator > 0.
pub type Rational = BigRational;

/// A commutative field usable as a coefficient domain.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when `==` and `is_zero` are exact (no rounding).
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    /// Lossy conversion used by numeric oracles.
    fn to_f64(&self) -> f64;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn abs_cmp_key(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Scale factor that turns `coeffs` into coprime integers, when the field
    /// has a notion of integrality. Elimination and Gröbner code use it to
    /// keep entries small; `None` means "leave as is".
    fn integral_scale(_coeffs: &[&Self]) -> Option<Self> {
        None
    }

    /// Kernel basis of a matrix given by rows, in the form produced by
    /// elimination (one vector per non-pivot column, that entry one), when
    /// the field has a faster exact route than generic elimination.
    fn fast_nullspace(_rows: &[&[Self]], _cols: usize) -> Option<Vec<Vec<Self>>> {
        None
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn integral_scale(coeffs: &[&Self]) -> Option<Self> {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in coeffs {
            if c.is_zero() {
                continue;
            }
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        if num.is_zero() {
            return None;
        }
        let scale = Rational::new(den, num);
        if scale.is_one() {
            None
        } else {
            Some(scale)
        }
    }

    fn fast_nullspace(rows: &[&[Self]], cols: usize) -> Option<Vec<Vec<Self>>> {
        if rows.len() * cols < 600 {
            return None;
        }
        let ints = crate::modular::integer_rows(rows.iter().map(|r| r.to_vec()));
        crate::modular::integer_kernel(&ints, cols)
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Field for f32 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f32
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let t = s.trim();
    let bad = || ParseError::Rational(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(t).map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Parse a comma separated weight list such as `"1, 1, -2"` or `"1/2,3"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, ParseError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(parse_rational)
        .collect()
}

pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Absolute value ordering key for pivot choices.
pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

pub trait HashableScalar: Field + Eq + Hash {}
impl HashableScalar for Rational {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(q, rat(-3, 2));
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&int(0)), "0");
        assert_eq!(*parse_rational("0/7").unwrap().denom(), BigInt::one());
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn integral_scale_makes_primitive_integers() {
        let a = rat(2, 3);
        let b = rat(4, 9);
        let s = Rational::integral_scale(&[&a, &b]).unwrap();
        assert_eq!(&a * &s, int(3));
        assert_eq!(&b * &s, int(2));
    }
}
