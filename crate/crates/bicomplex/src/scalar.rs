//! The ground field: Gaussian rationals `a + b*i` with exact rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An element of Q(i). Both parts are kept in reduced form with positive
/// denominator (num-rational maintains that canonically).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num/den`, panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `re_n/re_d + im_n/im_d * i`.
    pub fn from_parts(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(re_n), BigInt::from(re_d)),
            BigRational::new(BigInt::from(im_n), BigInt::from(im_d)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2` as a rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero scalar");
        Scalar::new(&self.re / &n, -&self.im / &n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical literal form: `a/b`, `c/d*i`, or `a/b+c/d*i` with the sign
    /// of the imaginary part folded into the separator. Unit imaginary parts
    /// print as `i` / `-i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let im_abs = self.im.abs();
        let im_str = if self.im.is_zero() {
            String::new()
        } else if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_rational(&im_abs))
        };
        if self.im.is_zero() {
            write!(f, "{}", fmt_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}{}", if self.im.is_negative() { "-" } else { "" }, im_str)
        } else {
            write!(
                f,
                "{}{}{}",
                fmt_rational(&self.re),
                if self.im.is_negative() { "-" } else { "+" },
                im_str
            )
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.trim().parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

/// One signed term of a scalar literal: either a rational or a rational
/// multiple of `i` (with `*` optional and a bare `i` meaning coefficient 1).
fn parse_term(term: &str) -> Result<(BigRational, bool), Error> {
    let t = term.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty term in scalar literal".into()));
    }
    if t == "i" {
        return Ok((BigRational::one(), true));
    }
    if let Some(raw) = t.strip_suffix('i') {
        let mut coeff = raw.trim_end();
        coeff = coeff.strip_suffix('*').unwrap_or(coeff).trim();
        return Ok(match coeff {
            "" | "+" => (BigRational::one(), true),
            "-" => (-BigRational::one(), true),
            _ => (parse_rational(coeff)?, true),
        });
    }
    Ok((parse_rational(t)?, false))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `a/b`, `c/d*i` (also `c/di`, `i`, `-i`) and two-term sums
    /// `a/b+c/d*i` / `a/b-c/d*i`. Whitespace around tokens is ignored.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        // Split on a '+'/'-' that is not the leading sign and not part of a
        // numerator/denominator (digits contain no signs after index 0).
        let bytes = s.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && bytes[idx - 1] != b'/' && bytes[idx - 1] != b'*' {
                split = Some(idx);
                break;
            }
        }
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        let mut apply = |term: &str| -> Result<(), Error> {
            let (value, imaginary) = parse_term(term)?;
            let slot = if imaginary { &mut im } else { &mut re };
            if !slot.is_zero() {
                return Err(Error::Parse(format!("repeated part in scalar literal `{s}`")));
            }
            *slot = value;
            Ok(())
        };
        match split {
            Some(idx) => {
                apply(&s[..idx])?;
                let rest = &s[idx..];
                let (sign, body) = if rest.starts_with('-') {
                    (-BigRational::one(), &rest[1..])
                } else {
                    (BigRational::one(), &rest[1..])
                };
                let (value, imaginary) = parse_term(body)?;
                let slot = if imaginary { &mut im } else { &mut re };
                if !slot.is_zero() {
                    return Err(Error::Parse(format!("repeated part in scalar literal `{s}`")));
                }
                *slot = sign * value;
            }
            None => apply(s)?,
        }
        Ok(Scalar::new(re, im))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}
