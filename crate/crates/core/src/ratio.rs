//! Exact rational arithmetic for index values.
//!
//! Every index in this crate is a ratio of integers, so all of them are
//! represented exactly; floating point only ever appears in derived decimal
//! renderings.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number with unbounded integer numerator and denominator.
///
/// Values are kept in lowest terms with a positive denominator, so equality
/// and ordering are plain value comparisons. Decimal strings are derived on
/// demand and never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    /// Builds `numer / denom` reduced to lowest terms; fails on a zero
    /// denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Self(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// Numerator in lowest terms; carries the sign.
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator in lowest terms; always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    /// Multiplicative inverse; fails on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::UndefinedIndex("reciprocal of zero".into()));
        }
        Ok(Self(self.0.recip()))
    }

    /// Nearest-f64 approximation, for display ordering and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded half-away-from-zero to `sig_digits`
    /// significant digits, with trailing fractional zeros trimmed.
    pub fn decimal(&self, sig_digits: usize) -> String {
        let sig = sig_digits.clamp(1, 10_000) as i64;
        if self.is_zero() {
            return "0".to_string();
        }
        let p = self.numer().magnitude();
        let q = self.denom().magnitude();

        // Exponent e with 10^e <= p/q < 10^(e+1).
        let mut e = decimal_exponent(p, q);
        let shift = sig - 1 - e;
        let mut t = scaled_round(p, q, shift);

        // Rounding may carry into an extra digit (e.g. 0.999 -> 1.0).
        let cap = BigUint::from(10u32).pow(sig as u32);
        if t >= cap {
            t /= 10u32;
            e += 1;
        }

        let digits = t.to_string();
        debug_assert_eq!(digits.len() as i64, sig);
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        if e >= sig - 1 {
            // Pure integer: pad with zeros up to the decimal point.
            out.push_str(&digits);
            for _ in 0..(e + 1 - sig) {
                out.push('0');
            }
        } else if e >= 0 {
            let split = (e + 1) as usize;
            out.push_str(&digits[..split]);
            let frac = digits[split..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        } else {
            let frac = digits.trim_end_matches('0');
            out.push_str("0.");
            for _ in 0..(-e - 1) {
                out.push('0');
            }
            out.push_str(frac);
        }
        out
    }

    /// Decimal rendering rounded half-away-from-zero to exactly `places`
    /// digits after the point (trailing zeros kept).
    pub fn decimal_places(&self, places: usize) -> String {
        let p = self.numer().magnitude();
        let q = self.denom().magnitude();
        let t = scaled_round(p, q, places as i64);
        let mut digits = t.to_string();
        if digits.len() < places + 1 {
            digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
        }
        let split = digits.len() - places;
        let sign = if self.is_negative() && !t.is_zero() {
            "-"
        } else {
            ""
        };
        if places == 0 {
            format!("{sign}{digits}")
        } else {
            format!("{sign}{}.{}", &digits[..split], &digits[split..])
        }
    }
}

/// Exponent e with 10^e <= p/q < 10^(e+1), for positive p, q.
fn decimal_exponent(p: &BigUint, q: &BigUint) -> i64 {
    let dp = p.to_string().len() as i64;
    let dq = q.to_string().len() as i64;
    let e = dp - dq;
    let ten = BigUint::from(10u32);
    // p/q >= 10^e exactly when p * 10^max(0,-e) >= q * 10^max(0,e).
    let lhs = p * ten.pow(e.min(0).unsigned_abs() as u32);
    let rhs = q * ten.pow(e.max(0) as u32);
    if lhs >= rhs {
        e
    } else {
        e - 1
    }
}

/// round(p/q * 10^shift) with ties away from zero, for positive p, q.
fn scaled_round(p: &BigUint, q: &BigUint, shift: i64) -> BigUint {
    let ten = BigUint::from(10u32);
    let (num, den) = if shift >= 0 {
        (p * ten.pow(shift as u32), q.clone())
    } else {
        (p.clone(), q * ten.pow((-shift) as u32))
    };
    (num * 2u32 + &den) / (den * 2u32)
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for ExactRatio {
    type Err = Error;

    /// Parses `p/q`, an integer, or a plain decimal such as `0.81`; decimals
    /// are read exactly (`0.81` becomes `81/100`), never as binary floats.
    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let bad = || Error::InvalidInput(format!("cannot parse '{trimmed}' as a rational number"));
        if trimmed.is_empty() {
            return Err(bad());
        }
        if let Some((numer, denom)) = trimmed.split_once('/') {
            let numer = BigInt::from_str(numer.trim()).map_err(|_| bad())?;
            let denom = BigInt::from_str(denom.trim()).map_err(|_| bad())?;
            return ExactRatio::new(numer, denom);
        }
        let (sign, body) = match trimmed.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, trimmed.strip_prefix('+').unwrap_or(trimmed)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let joined = format!("{int_part}{frac_part}");
        let numer = BigInt::from_str(if joined.is_empty() { "0" } else { &joined })
            .map_err(|_| bad())?
            * sign;
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        ExactRatio::new(numer, denom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio((self.0).$method(rhs.0))
            }
        }
        impl $trait<&ExactRatio> for &ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &ExactRatio) -> ExactRatio {
                ExactRatio((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&ExactRatio> for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &ExactRatio) -> ExactRatio {
                ExactRatio((self.0).$method(&rhs.0))
            }
        }
        impl $trait<ExactRatio> for &ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division panics on a zero divisor, like the primitive integer types; use
// `recip` where a zero divisor is a reachable input.
forward_binop!(Div, div);

impl Neg for ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio(-self.0)
    }
}

impl Neg for &ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> ExactRatio {
        ExactRatio::new(n, d).unwrap()
    }

    #[test]
    fn reduces_to_lowest_terms_with_positive_denominator() {
        let r = ratio(-242, 1474);
        assert_eq!(r.numer(), &BigInt::from(-11));
        assert_eq!(r.denom(), &BigInt::from(67));
        let r = ratio(56, -78);
        assert_eq!(r.to_string(), "-28/39");
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(matches!(
            ExactRatio::new(1, 0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn displays_integers_without_denominator() {
        assert_eq!(ratio(6, 3).to_string(), "2");
        assert_eq!(ratio(0, 5).to_string(), "0");
        assert_eq!(ratio(-1, 2).to_string(), "-1/2");
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!("-5/13".parse::<ExactRatio>().unwrap(), ratio(-5, 13));
        assert_eq!("0.81".parse::<ExactRatio>().unwrap(), ratio(81, 100));
        assert_eq!("-0.385".parse::<ExactRatio>().unwrap(), ratio(-77, 200));
        assert_eq!("7".parse::<ExactRatio>().unwrap(), ratio(7, 1));
        assert_eq!("+.5".parse::<ExactRatio>().unwrap(), ratio(1, 2));
        for bad in ["", "x", "1/0", "1.2.3", "1e3", "--1"] {
            assert!(bad.parse::<ExactRatio>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn decimal_significant_digits() {
        assert_eq!(ratio(-5, 13).decimal(6), "-0.384615");
        assert_eq!(ratio(-11, 67).decimal(6), "-0.164179");
        assert_eq!(ratio(19, 150).decimal(2), "0.13");
        assert_eq!(ratio(78, 67).decimal(6), "1.16418");
        assert_eq!(ratio(1, 2).decimal(6), "0.5");
        assert_eq!(ratio(999, 1000).decimal(2), "1");
        assert_eq!(ratio(12345, 1).decimal(3), "12300");
        assert_eq!(ratio(1, 800).decimal(2), "0.0013");
        assert_eq!(ExactRatio::zero().decimal(4), "0");
    }

    #[test]
    fn decimal_fixed_places() {
        assert_eq!(ratio(19, 150).decimal_places(2), "0.13");
        assert_eq!(ratio(33, 100).decimal_places(2), "0.33");
        assert_eq!(ratio(-5, 13).decimal_places(3), "-0.385");
        assert_eq!(ratio(1, 1).decimal_places(2), "1.00");
        assert_eq!(ratio(7, 2).decimal_places(0), "4");
    }

    #[test]
    fn arithmetic_and_ordering() {
        let a = ratio(1, 3);
        let b = ratio(1, 6);
        assert_eq!(&a + &b, ratio(1, 2));
        assert_eq!(&a - &b, ratio(1, 6));
        assert_eq!(&a * &b, ratio(1, 18));
        assert_eq!(&a / &b, ratio(2, 1));
        assert_eq!(-&a, ratio(-1, 3));
        assert!(ratio(-1, 2) < ratio(-1, 3));
        assert_eq!(ratio(2, 4).recip().unwrap(), ratio(2, 1));
        assert!(ExactRatio::zero().recip().is_err());
    }
}
