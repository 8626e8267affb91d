//! Laurent polynomials in the auxiliary variable `w = q^s`.
//!
//! Substituting `w = q^s` turns the lattice variable into
//! `z = (w + 1/w)/2`, so a polynomial in `z` becomes a symmetric Laurent
//! polynomial in `w`. The half-step shifts `s -> s +/- 1/2` become the
//! substitutions `w -> v*w` and `w -> w/v` with `v = q^(1/2)`, which is what
//! makes the divided-difference operator an exact Laurent division.

use core::fmt;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::zpoly::ZPoly;

/// A finitely supported two-sided coefficient sequence: coefficient `i` of
/// `coeffs` belongs to the exponent `lo + i`. Both ends of the support are
/// nonzero unless the polynomial is zero (empty list).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::term(0, Scalar::one())
    }

    /// `c * w^exp`.
    pub fn term(exp: i64, c: Scalar) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            lo: exp,
            coeffs: vec![c],
        }
    }

    /// Builds from the lowest exponent and ascending coefficients, trimming
    /// zeros at both ends.
    pub fn from_parts(mut lo: i64, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        let leading_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            coeffs.drain(..leading_zeros);
            lo += leading_zeros as i64;
        }
        if coeffs.is_empty() {
            return LaurentPoly::zero();
        }
        LaurentPoly { lo, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent of the support (`None` for zero).
    pub fn lo(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Highest exponent of the support (`None` for zero).
    pub fn hi(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `w^exp`.
    pub fn coeff(&self, exp: i64) -> Scalar {
        let idx = exp - self.lo;
        if idx < 0 || self.is_zero() {
            return Scalar::zero();
        }
        self.coeffs
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Whether `coeff(k) == coeff(-k)` for all `k`.
    pub fn is_symmetric(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let hi = self.hi().unwrap();
        if self.lo != -hi {
            return false;
        }
        (1..=hi).all(|k| self.coeff(k) == self.coeff(-k))
    }

    /// The substitution `w -> c*w`: the coefficient at exponent `k` is
    /// multiplied by `c^k`.
    pub fn scale_var(&self, c: &Scalar) -> Result<LaurentPoly> {
        if c.is_zero() {
            return Err(Error::ZeroScale);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * c.pow(self.lo + i as i64))
            .collect();
        Ok(LaurentPoly {
            lo: self.lo,
            coeffs,
        })
    }

    /// Exact quotient `self / den`; errors with `NotDivisible` when the
    /// division leaves a remainder. Panics if `den` is zero.
    pub fn divide_exact(&self, den: &LaurentPoly) -> Result<LaurentPoly> {
        assert!(!den.is_zero(), "Laurent division by zero");
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if self.coeffs.len() < den.coeffs.len() {
            return Err(Error::NotDivisible);
        }
        // Long division on the shifted (ordinary) coefficient vectors,
        // eliminating from the top; the exponent offset is restored at the end.
        let mut rem = self.coeffs.clone();
        let dlen = den.coeffs.len();
        let dlead = den.coeffs.last().expect("nonzero divisor");
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![Scalar::zero(); qlen];
        for qi in (0..qlen).rev() {
            let top = rem[qi + dlen - 1].clone();
            if top.is_zero() {
                continue;
            }
            let factor = &top / dlead;
            for (di, dc) in den.coeffs.iter().enumerate() {
                rem[qi + di] = &rem[qi + di] - &(&factor * dc);
            }
            quot[qi] = factor;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(LaurentPoly::from_parts(self.lo - den.lo, quot))
    }
}

impl core::ops::Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().unwrap().max(rhs.hi().unwrap());
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        LaurentPoly::from_parts(lo, coeffs)
    }
}

impl core::ops::Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &-rhs
    }
}

impl core::ops::Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LaurentPoly {
            lo: self.lo + rhs.lo,
            coeffs,
        }
    }
}

impl core::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exp = self.lo + i as i64;
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if exp == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if exp == 1 {
                    write!(f, "w")?;
                } else {
                    write!(f, "w^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `p(z)` as the symmetric Laurent polynomial `p((w + 1/w)/2)`.
pub fn z_to_laurent(p: &ZPoly) -> LaurentPoly {
    let Some(deg) = p.degree() else {
        return LaurentPoly::zero();
    };
    // Horner in t = (w + 1/w)/2.
    let half = Scalar::new(1, 2);
    let t = LaurentPoly::from_parts(-1, vec![half.clone(), Scalar::zero(), half]);
    let mut acc = LaurentPoly::term(0, p.coeff(deg));
    for k in (0..deg).rev() {
        acc = &(&acc * &t) + &LaurentPoly::term(0, p.coeff(k));
    }
    acc
}

/// Inverse of [`z_to_laurent`]: recovers the unique `p` with
/// `z_to_laurent(p) == l`, peeling the top exponent downward. The leading
/// coefficient of `z_to_laurent(z^n)` at `w^n` is exactly `2^-n`, so each
/// peel step is unambiguous.
pub fn laurent_to_z(l: &LaurentPoly) -> Result<ZPoly> {
    if !l.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut rest = l.clone();
    let mut coeffs: Vec<Scalar> = Vec::new();
    while let Some(hi) = rest.hi() {
        // symmetric: hi >= 0 and lo == -hi
        let n = hi as usize;
        let c = rest.coeff(hi) * Scalar::from_int(2).pow(hi);
        if coeffs.len() < n + 1 {
            coeffs.resize(n + 1, Scalar::zero());
        }
        coeffs[n] = c.clone();
        let peel = z_to_laurent(&ZPoly::monomial(n, c));
        rest = &rest - &peel;
        debug_assert!(rest.hi().is_none_or(|h| h < hi));
    }
    Ok(ZPoly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn z_to_laurent_of_constant_and_z() {
        assert_eq!(
            z_to_laurent(&ZPoly::one()),
            LaurentPoly::term(0, Scalar::one())
        );
        let w_half = LaurentPoly::from_parts(-1, vec![sc(1, 2), Scalar::zero(), sc(1, 2)]);
        assert_eq!(z_to_laurent(&ZPoly::var()), w_half);
    }

    #[test]
    fn z_to_laurent_of_z_squared() {
        // ((w + 1/w)/2)^2 = w^-2/4 + 1/2 + w^2/4
        let z2 = ZPoly::monomial(2, Scalar::one());
        let expected = LaurentPoly::from_parts(
            -2,
            vec![sc(1, 4), Scalar::zero(), sc(1, 2), Scalar::zero(), sc(1, 4)],
        );
        assert_eq!(z_to_laurent(&z2), expected);
        assert!(z_to_laurent(&z2).is_symmetric());
    }

    #[test]
    fn laurent_to_z_round_trips() {
        let l = LaurentPoly::from_parts(
            -2,
            vec![sc(1, 4), Scalar::zero(), sc(1, 2), Scalar::zero(), sc(1, 4)],
        );
        assert_eq!(laurent_to_z(&l).unwrap(), ZPoly::monomial(2, Scalar::one()));
        assert_eq!(
            laurent_to_z(&LaurentPoly::term(0, sc(5, 1))).unwrap(),
            ZPoly::constant(sc(5, 1))
        );
    }

    #[test]
    fn laurent_to_z_peels_mixed_terms() {
        // w^-1/2 + 1 + w/2 = z + 1 (symmetric, so no error)
        let l = LaurentPoly::from_parts(-1, vec![sc(1, 2), Scalar::one(), sc(1, 2)]);
        let p = laurent_to_z(&l).unwrap();
        assert_eq!(p, &ZPoly::var() + &ZPoly::one());
    }

    #[test]
    fn laurent_to_z_rejects_asymmetric() {
        let l = LaurentPoly::from_parts(-1, vec![sc(1, 2), Scalar::zero(), sc(1, 3)]);
        assert_eq!(laurent_to_z(&l), Err(Error::NotSymmetric));
        let shifted = LaurentPoly::term(1, Scalar::one());
        assert_eq!(laurent_to_z(&shifted), Err(Error::NotSymmetric));
    }

    #[test]
    fn scale_var_multiplies_by_powers() {
        let v = sc(1, 2);
        let w = LaurentPoly::term(1, Scalar::one());
        assert_eq!(w.scale_var(&v).unwrap(), LaurentPoly::term(1, sc(1, 2)));
        let w_inv = LaurentPoly::term(-1, Scalar::one());
        assert_eq!(
            w_inv.scale_var(&v).unwrap(),
            LaurentPoly::term(-1, sc(2, 1))
        );
        let l = LaurentPoly::from_parts(
            -2,
            vec![sc(1, 4), Scalar::zero(), sc(1, 2), Scalar::zero(), sc(1, 4)],
        );
        let scaled = l.scale_var(&sc(1, 2)).unwrap();
        assert_eq!(scaled.coeff(-2), Scalar::one());
        assert_eq!(scaled.coeff(0), sc(1, 2));
        assert_eq!(scaled.coeff(2), sc(1, 16));
        assert_eq!(w.scale_var(&Scalar::zero()), Err(Error::ZeroScale));
    }

    #[test]
    fn divide_exact_difference_of_squares() {
        // (w^2 - w^-2) / (w - w^-1) = w + w^-1
        let num = LaurentPoly::from_parts(
            -2,
            vec![
                sc(-1, 1),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::one(),
            ],
        );
        let den = LaurentPoly::from_parts(-1, vec![sc(-1, 1), Scalar::zero(), Scalar::one()]);
        let quot = num.divide_exact(&den).unwrap();
        let expected =
            LaurentPoly::from_parts(-1, vec![Scalar::one(), Scalar::zero(), Scalar::one()]);
        assert_eq!(quot, expected);
        assert_eq!(&quot * &den, num);
    }

    #[test]
    fn divide_exact_zero_numerator() {
        let den = LaurentPoly::from_parts(-1, vec![sc(-1, 1), Scalar::zero(), Scalar::one()]);
        assert_eq!(
            LaurentPoly::zero().divide_exact(&den).unwrap(),
            LaurentPoly::zero()
        );
    }

    #[test]
    fn divide_exact_detects_remainder() {
        // (w^2 + w - w^-1) / (w - w^-1) has remainder
        let num = LaurentPoly::from_parts(
            -1,
            vec![sc(-1, 1), Scalar::zero(), Scalar::one(), Scalar::one()],
        );
        let den = LaurentPoly::from_parts(-1, vec![sc(-1, 1), Scalar::zero(), Scalar::one()]);
        assert_eq!(num.divide_exact(&den), Err(Error::NotDivisible));
    }

    #[test]
    fn from_parts_normalizes_support() {
        let l = LaurentPoly::from_parts(
            -3,
            vec![
                Scalar::zero(),
                Scalar::one(),
                Scalar::zero(),
                Scalar::zero(),
            ],
        );
        assert_eq!(l.lo(), Some(-2));
        assert_eq!(l.hi(), Some(-2));
        assert!(LaurentPoly::from_parts(5, vec![Scalar::zero()]).is_zero());
    }
}
