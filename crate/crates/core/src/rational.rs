//! Exact rational scalars.
//!
//! `Rat` is a thin newtype over an arbitrary-precision `BigRational`, always in
//! lowest terms with a positive denominator. Nothing in this crate ever rounds.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::geometry::Sign;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

/// Failure to read a rational literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{literal}`")]
pub struct ParseRatError {
    pub literal: String,
}

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(value: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(value)))
    }

    /// `numer / denom`, reduced. Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer, denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn sign(&self) -> Sign {
        match self.0.numer().sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// True when numerator and denominator both fit in an `i64`.
    pub fn fits_i64(&self) -> bool {
        self.0.numer().to_i64().is_some() && self.0.denom().to_i64().is_some()
    }

    /// Multiplies by an integer and returns the result if it is a
    /// non-negative integer that fits in `u128`.
    pub fn scaled_to_u128(&self, scale: &BigUint) -> Option<u128> {
        let scaled = &self.0 * BigRational::from_integer(BigInt::from(scale.clone()));
        if !scaled.is_integer() || scaled.is_negative() {
            return None;
        }
        scaled.to_integer().to_u128()
    }
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigUint {
    values.into_iter().fold(BigUint::one(), |acc, v| {
        acc.lcm(v.denom().magnitude())
    })
}

impl From<i64> for Rat {
    fn from(value: i64) -> Self {
        Rat::from_int(value)
    }
}

impl From<BigInt> for Rat {
    fn from(value: BigInt) -> Self {
        Rat(BigRational::from_integer(value))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts integers (`-3`), fractions (`7/25`), and decimals with an optional
/// exponent (`0.5`, `-1.25e-3`). Decimals are converted exactly.
impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRatError {
            literal: String::from(s),
        };
        if s.is_empty() {
            return Err(err());
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = parse_int(n).ok_or_else(err)?;
            let d: BigInt = parse_int(d).ok_or_else(err)?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rat::from_big(n, d));
        }

        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(pos) => {
                let exp: i64 = s[pos + 1..].parse().map_err(|_| err())?;
                (&s[..pos], exp)
            }
            None => (s, 0),
        };
        let (negative, digits) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let mut all = String::from(int_part);
        all.push_str(frac_part);
        let mut numer: BigInt = all.parse().map_err(|_| err())?;
        if negative {
            numer = -numer;
        }
        let shift = exponent - frac_part.len() as i64;
        let ten = BigInt::from(10u32);
        let pow = num_traits::pow(ten, shift.unsigned_abs() as usize);
        Ok(if shift >= 0 {
            Rat::from(numer * pow)
        } else {
            Rat::from_big(numer, pow)
        })
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl core::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> core::iter::Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl PartialEq<i64> for Rat {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && self.0.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rat {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!("0.5".parse::<Rat>().unwrap(), Rat::new(1, 2));
        assert_eq!("-1.25".parse::<Rat>().unwrap(), Rat::new(-5, 4));
        assert_eq!("2.5e-1".parse::<Rat>().unwrap(), Rat::new(1, 4));
        assert_eq!("3E2".parse::<Rat>().unwrap(), Rat::from_int(300));
        assert_eq!(".75".parse::<Rat>().unwrap(), Rat::new(3, 4));
        assert_eq!("0.1".parse::<Rat>().unwrap(), Rat::new(1, 10));
    }

    #[test]
    fn fractions_reduce() {
        let r: Rat = "14/-50".parse().unwrap();
        assert_eq!(r, Rat::new(-7, 25));
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(alloc::format!("{r}"), "-7/25");
        assert_eq!(alloc::format!("{}", Rat::from_int(4)), "4");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1..2", "1/2/3", "--1", "e5", "1e", "0x10"] {
            assert!(bad.parse::<Rat>().is_err(), "{bad}");
        }
    }

    #[test]
    fn scaling_to_integers() {
        let vals = [Rat::new(1, 6), Rat::new(3, 4), Rat::from_int(2)];
        let d = common_denominator(vals.iter());
        assert_eq!(d, BigUint::from(12u32));
        assert_eq!(vals[0].scaled_to_u128(&d), Some(2));
        assert_eq!(vals[1].scaled_to_u128(&d), Some(9));
        assert_eq!(Rat::new(-1, 2).scaled_to_u128(&d), None);
    }
}
