//! The q-quadratic lattice parameter and the scalar sequences attached to it.
//!
//! The base is supplied as `v = q^(1/2)` with `v > 0`, `v != 1`, so that
//! `q = v^2`, `alpha = (v + 1/v)/2` and every half-integer power of `q`
//! appearing in the theory stays an exact rational. Both regimes `0 < q < 1`
//! and `q > 1` are covered; replacing `v` by `1/v` realizes the `1/q`
//! variants of the solution families.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::zpoly::ZPoly;

/// Lattice data derived from `v = q^(1/2)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeParam {
    v: Scalar,
    q: Scalar,
    alpha: Scalar,
}

/// The four scalar sequences of the operator calculus.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeqKind {
    /// `alpha_n = (v^n + v^-n)/2`, with `alpha_-1 = alpha`.
    AlphaN,
    /// `gamma_n = (v^n - v^-n)/(v - v^-1)`, with `gamma_-1 = -1`.
    GammaN,
    /// `u_n = (n*gamma_{n-2} - (n-2)*gamma_n)/4`.
    UN,
    /// `u_hat_n = n*(alpha_{n-2} - alpha_n)/4`.
    UHatN,
}

/// The sign `s = +/-1` selecting between a solution family and its `1/q`
/// mirror.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn exponent(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(s: i64) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl core::fmt::Display for Sign {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

impl LatticeParam {
    /// Validates `v > 0`, `v != 1` and derives `q`, `alpha`.
    pub fn new(v: Scalar) -> Result<Self> {
        if !v.is_positive() || v.is_one() {
            return Err(Error::InvalidLattice);
        }
        let q = &v * &v;
        let alpha = (&v + &v.recip()) * Scalar::new(1, 2);
        Ok(LatticeParam { v, q, alpha })
    }

    pub fn v(&self) -> &Scalar {
        &self.v
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    /// `alpha = (q^(1/2) + q^(-1/2))/2`.
    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    /// The lattice built from `1/v`, i.e. the base `1/q`.
    pub fn inverted(&self) -> Self {
        LatticeParam::new(self.v.recip()).expect("1/v is a valid lattice parameter")
    }

    pub fn v_pow(&self, e: i64) -> Scalar {
        self.v.pow(e)
    }

    pub fn q_pow(&self, e: i64) -> Scalar {
        self.q.pow(e)
    }

    /// `q^(s*e)` for the sign parameter `s`.
    pub fn q_pow_signed(&self, sign: Sign, e: i64) -> Scalar {
        self.q.pow(sign.exponent() * e)
    }

    /// `q^(s*e/2) = v^(s*e)`.
    pub fn v_pow_signed(&self, sign: Sign, e: i64) -> Scalar {
        self.v.pow(sign.exponent() * e)
    }

    // The closed forms below are valid for every integer n; in particular
    // they reproduce the conventions gamma_-1 = -1 and alpha_-1 = alpha.
    fn alpha_closed(&self, n: i64) -> Scalar {
        (self.v.pow(n) + self.v.pow(-n)) * Scalar::new(1, 2)
    }

    fn gamma_closed(&self, n: i64) -> Scalar {
        let num = self.v.pow(n) - self.v.pow(-n);
        let den = &self.v - &self.v.recip();
        num / den
    }

    /// `alpha_n` for `n >= -1`.
    pub fn alpha_n(&self, n: i64) -> Result<Scalar> {
        if n < -1 {
            return Err(Error::BadIndex { index: n });
        }
        Ok(self.alpha_closed(n))
    }

    /// `gamma_n` for `n >= -1`; nonzero for all `n >= 1` since `v != 1`.
    pub fn gamma_n(&self, n: i64) -> Result<Scalar> {
        if n < -1 {
            return Err(Error::BadIndex { index: n });
        }
        Ok(self.gamma_closed(n))
    }

    /// `u_n = (n*gamma_{n-2} - (n-2)*gamma_n)/4` for `n >= 0`.
    pub fn u_n(&self, n: i64) -> Result<Scalar> {
        if n < 0 {
            return Err(Error::BadIndex { index: n });
        }
        let t = Scalar::from_int(n) * self.gamma_closed(n - 2)
            - Scalar::from_int(n - 2) * self.gamma_closed(n);
        Ok(t * Scalar::new(1, 4))
    }

    /// `u_hat_n = n*(alpha_{n-2} - alpha_n)/4` for `n >= 0`.
    pub fn u_hat_n(&self, n: i64) -> Result<Scalar> {
        if n < 0 {
            return Err(Error::BadIndex { index: n });
        }
        let t = self.alpha_closed(n - 2) - self.alpha_closed(n);
        Ok(Scalar::from_int(n) * t * Scalar::new(1, 4))
    }

    pub fn seq(&self, kind: SeqKind, n: i64) -> Result<Scalar> {
        match kind {
            SeqKind::AlphaN => self.alpha_n(n),
            SeqKind::GammaN => self.gamma_n(n),
            SeqKind::UN => self.u_n(n),
            SeqKind::UHatN => self.u_hat_n(n),
        }
    }

    /// `U_1(z) = (alpha^2 - 1) * z`.
    pub fn u1(&self) -> ZPoly {
        let a2m1 = &self.alpha * &self.alpha - Scalar::one();
        ZPoly::monomial(1, a2m1)
    }

    /// `U_2(z) = (alpha^2 - 1) * (z^2 - 1)`.
    pub fn u2(&self) -> ZPoly {
        let a2m1 = &self.alpha * &self.alpha - Scalar::one();
        ZPoly::from_coeffs(alloc::vec![-&a2m1, Scalar::zero(), a2m1])
    }

    /// `z^2 - alpha^2`, the structural polynomial of the second Appell case.
    pub fn z2_minus_alpha2(&self) -> ZPoly {
        let a2 = &self.alpha * &self.alpha;
        ZPoly::from_coeffs(alloc::vec![-a2, Scalar::zero(), Scalar::one()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp_half() -> LatticeParam {
        LatticeParam::new(Scalar::new(1, 2)).unwrap()
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert_eq!(LatticeParam::new(Scalar::one()), Err(Error::InvalidLattice));
        assert_eq!(
            LatticeParam::new(Scalar::zero()),
            Err(Error::InvalidLattice)
        );
        assert_eq!(
            LatticeParam::new(Scalar::new(-1, 2)),
            Err(Error::InvalidLattice)
        );
    }

    #[test]
    fn derived_quantities_at_v_half() {
        let lp = lp_half();
        assert_eq!(lp.q(), &Scalar::new(1, 4));
        assert_eq!(lp.alpha(), &Scalar::new(5, 4));
    }

    #[test]
    fn basic_sequence_values() {
        let lp = lp_half();
        assert_eq!(lp.gamma_n(1).unwrap(), Scalar::one());
        assert_eq!(lp.alpha_n(0).unwrap(), Scalar::one());
        assert_eq!(lp.gamma_n(0).unwrap(), Scalar::zero());
    }

    #[test]
    fn index_minus_one_conventions() {
        // gamma_-1 = -1 and alpha_-1 = alpha for every lattice
        for v in [Scalar::new(1, 2), Scalar::new(2, 3), Scalar::new(3, 2)] {
            let lp = LatticeParam::new(v).unwrap();
            assert_eq!(lp.gamma_n(-1).unwrap(), Scalar::from_int(-1));
            assert_eq!(lp.alpha_n(-1).unwrap(), lp.alpha().clone());
        }
    }

    #[test]
    fn sequence_values_at_v_half() {
        let lp = lp_half();
        assert_eq!(lp.seq(SeqKind::GammaN, 3).unwrap(), Scalar::new(21, 4));
        assert_eq!(lp.seq(SeqKind::UN, 3).unwrap(), Scalar::new(-9, 16));
        assert_eq!(lp.seq(SeqKind::AlphaN, 2).unwrap(), Scalar::new(17, 8));
        assert_eq!(lp.seq(SeqKind::UHatN, 2).unwrap(), Scalar::new(-9, 16));
    }

    #[test]
    fn bad_indices_are_rejected() {
        let lp = lp_half();
        assert_eq!(lp.alpha_n(-2), Err(Error::BadIndex { index: -2 }));
        assert_eq!(lp.gamma_n(-2), Err(Error::BadIndex { index: -2 }));
        assert_eq!(lp.u_n(-1), Err(Error::BadIndex { index: -1 }));
        assert_eq!(lp.u_hat_n(-1), Err(Error::BadIndex { index: -1 }));
    }

    #[test]
    fn structural_polynomials_at_v_half() {
        let lp = lp_half();
        assert_eq!(lp.u1(), ZPoly::monomial(1, Scalar::new(9, 16)));
        let u2 = lp.u2();
        assert_eq!(u2.coeff(2), Scalar::new(9, 16));
        assert_eq!(u2.coeff(0), Scalar::new(-9, 16));
        // roots at +/-1 for any lattice
        for v in [Scalar::new(2, 3), Scalar::new(3, 2), Scalar::new(7, 5)] {
            let lp = LatticeParam::new(v).unwrap();
            assert!(lp.u2().eval(&Scalar::one()).is_zero());
            assert!(lp.u2().eval(&Scalar::from_int(-1)).is_zero());
        }
    }

    #[test]
    fn sequences_invariant_under_v_inversion() {
        let lp = lp_half();
        let inv = lp.inverted();
        for n in -1..=8 {
            assert_eq!(lp.alpha_n(n).unwrap(), inv.alpha_n(n).unwrap());
            assert_eq!(lp.gamma_n(n).unwrap(), inv.gamma_n(n).unwrap());
        }
        assert_eq!(lp.alpha(), inv.alpha());
    }
}
