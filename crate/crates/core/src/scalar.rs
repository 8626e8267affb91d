//! Arbitrary-precision rational scalars.
//!
//! `Scalar` is the coefficient field for the whole crate. It wraps a
//! `BigRational`, which keeps every value in canonical form (fully reduced,
//! positive denominator), and exposes only exact operations: nothing in this
//! crate ever rounds.

use core::fmt;
use core::iter::Sum;
use core::str::FromStr;

use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational number.
///
/// The text encoding is `num/den` with the sign on the numerator and the
/// denominator omitted when it is 1, e.g. `"3/8"`, `"-5"`, `"0"`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` from machine integers. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "Scalar::new with zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "Scalar::recip of zero");
        Scalar(self.0.recip())
    }

    /// Integer power by repeated squaring; negative exponents invert.
    /// Panics when raising zero to a negative power.
    pub fn pow(&self, exp: i64) -> Self {
        if exp == 0 {
            return Scalar::one();
        }
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl core::ops::$imp for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(core::ops::$imp::$method(self.0, rhs.0))
            }
        }
        impl core::ops::$imp<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(core::ops::$imp::$method(self.0, &rhs.0))
            }
        }
        impl core::ops::$imp<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(core::ops::$imp::$method(&self.0, rhs.0))
            }
        }
        impl core::ops::$imp<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(core::ops::$imp::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl core::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl core::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Failure to parse a `Scalar` from its text encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError {
    input: String,
}

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal: {:?}", self.input)
    }
}

impl core::error::Error for ParseScalarError {}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let err = || ParseScalarError {
            input: String::from(s),
        };
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num = BigInt::from_str(num_str).map_err(|_| err())?;
        let den = match den_str {
            Some(d) => BigInt::from_str(d).map_err(|_| err())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(err());
        }
        Ok(Scalar(BigRational::new(num, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Scalar::new(2, 4), Scalar::new(1, 2));
        assert_eq!(Scalar::new(3, -6), Scalar::new(-1, 2));
        assert_eq!(Scalar::new(0, 7), Scalar::zero());
    }

    #[test]
    fn display_omits_unit_denominator() {
        use alloc::string::ToString;
        assert_eq!(Scalar::new(3, 8).to_string(), "3/8");
        assert_eq!(Scalar::new(-5, 1).to_string(), "-5");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::new(-3, 8).to_string(), "-3/8");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "1", "-7", "3/8", "-21/4", "513/2048"] {
            let x: Scalar = s.parse().unwrap();
            use alloc::string::ToString;
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("2/4".parse::<Scalar>().unwrap(), Scalar::new(1, 2));
        assert_eq!("1/-2".parse::<Scalar>().unwrap(), Scalar::new(-1, 2));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
        assert!("a/b".parse::<Scalar>().is_err());
        assert!("1.5".parse::<Scalar>().is_err());
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let half = Scalar::new(1, 2);
        assert_eq!(half.pow(3), Scalar::new(1, 8));
        assert_eq!(half.pow(-2), Scalar::from_int(4));
        assert_eq!(half.pow(0), Scalar::one());
        assert_eq!(Scalar::from_int(-3).pow(3), Scalar::from_int(-27));
    }

    #[test]
    fn field_ops_are_exact() {
        let a = Scalar::new(1, 3);
        let b = Scalar::new(1, 6);
        assert_eq!(&a + &b, Scalar::new(1, 2));
        assert_eq!(&a - &b, Scalar::new(1, 6));
        assert_eq!(&a * &b, Scalar::new(1, 18));
        assert_eq!(&a / &b, Scalar::from_int(2));
    }
}
