//! Pearson-type distributional equations `Dq(phi u) = Sq(psi u)` and the
//! closed-form recurrence coefficients they induce.
//!
//! For `phi(z) = a z^2 + b z + c` and `psi(z) = d z + e` with `d != 0`, a
//! regular solution `u` has a monic orthogonal family whose recurrence
//! coefficients are
//!
//! ```text
//! B_n     = gamma_n e_{n-1} / d_{2n-2}  -  gamma_{n+1} e_n / d_{2n}
//! C_{n+1} = -(gamma_{n+1} d_{n-1} / (d_{2n-1} d_{2n+1})) * phi_n(-e_n / d_{2n})
//! ```
//!
//! with `d_n = a gamma_n + d alpha_n`, `e_n = b gamma_n + e alpha_n` and
//!
//! ```text
//! phi_n(z) = (d (alpha^2-1) gamma_{2n} + a alpha_{2n}) (z^2 - 1/2)
//!          + (b alpha_n + e (alpha^2-1) gamma_n) z + c + a/2 .
//! ```
//!
//! The formulas divide by `d_{2n-2}`, `d_{2n}`, `d_{2n+1}`, so admissibility
//! (`d_k != 0`) is checked eagerly for the whole requested range.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::functional::{functional_dq, functional_sq, leftmul, MomentFunctional};
use crate::lattice::{LatticeParam, Sign};
use crate::recurrence::Ttrr;
use crate::scalar::Scalar;
use crate::zpoly::ZPoly;

/// The five coefficients of a Pearson pair: `phi = a z^2 + b z + c`,
/// `psi = d z + e`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PearsonData {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub e: Scalar,
}

impl PearsonData {
    /// Requires `d != 0` (equivalently `d_0 != 0`).
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar, e: Scalar) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Inadmissible { k: 0 });
        }
        Ok(PearsonData { a, b, c, d, e })
    }

    /// The pair `phi = (s/2)(q^(-1/2) - q^(1/2))(z^2 - 1)`, `psi = z` whose
    /// solutions are the `Sq Dq`-Appell functionals: the induced recurrence
    /// is `B_n = 0`, `C_{n+1} = (1 - q^(s(n+1)))(1 + q^(sn))/4`.
    pub fn appell_case1(sign: Sign, lp: &LatticeParam) -> Self {
        let s = Scalar::from_int(sign.exponent());
        let a = &s * (lp.v().recip() - lp.v()) * Scalar::new(1, 2);
        PearsonData {
            b: Scalar::zero(),
            c: -&a,
            d: Scalar::one(),
            e: Scalar::zero(),
            a,
        }
    }

    pub fn phi(&self) -> ZPoly {
        ZPoly::from_coeffs(alloc::vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }

    pub fn psi(&self) -> ZPoly {
        ZPoly::from_coeffs(alloc::vec![self.e.clone(), self.d.clone()])
    }

    fn d_k(&self, lp: &LatticeParam, k: i64) -> Scalar {
        // closed forms are valid for every integer index
        let gamma = (lp.v_pow(k) - lp.v_pow(-k)) / (lp.v() - &lp.v().recip());
        let alpha = (lp.v_pow(k) + lp.v_pow(-k)) * Scalar::new(1, 2);
        &self.a * gamma + &self.d * alpha
    }

    fn e_k(&self, lp: &LatticeParam, k: i64) -> Scalar {
        let gamma = (lp.v_pow(k) - lp.v_pow(-k)) / (lp.v() - &lp.v().recip());
        let alpha = (lp.v_pow(k) + lp.v_pow(-k)) * Scalar::new(1, 2);
        &self.b * gamma + &self.e * alpha
    }

    /// `phi_n` as a polynomial, exactly as displayed.
    fn phi_n(&self, lp: &LatticeParam, n: i64) -> ZPoly {
        let alpha = lp.alpha();
        let a2m1 = alpha * alpha - Scalar::one();
        let lead = &self.d * &a2m1 * lp.gamma_n(2 * n).expect("n >= 0")
            + &self.a * lp.alpha_n(2 * n).expect("n >= 0");
        let lin = &self.b * lp.alpha_n(n).expect("n >= 0")
            + &self.e * &a2m1 * lp.gamma_n(n).expect("n >= 0");
        let half = Scalar::new(1, 2);
        let constant = &self.c + &self.a * &half - &lead * &half;
        ZPoly::from_coeffs(alloc::vec![constant, lin, lead])
    }
}

/// The recurrence induced by a Pearson pair, via the closed-form `B_n` and
/// `C_{n+1}` above, for `n <= n_max`.
///
/// Errors with `Inadmissible` if some needed `d_k` vanishes and with `ZeroC`
/// if a produced `C_{n+1}` is zero (the form is not regular).
pub fn ttrr_from_pearson(pd: &PearsonData, lp: &LatticeParam, n_max: usize) -> Result<Ttrr> {
    let top = 2 * n_max as i64 + 1;
    for k in -1..=top {
        if pd.d_k(lp, k).is_zero() {
            return Err(Error::Inadmissible { k });
        }
    }
    let mut bs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max as i64 {
        let gamma_n = lp.gamma_n(n).expect("n >= 0");
        let first = if gamma_n.is_zero() {
            Scalar::zero()
        } else {
            gamma_n * pd.e_k(lp, n - 1) / pd.d_k(lp, 2 * n - 2)
        };
        let second = lp.gamma_n(n + 1).expect("n >= 0") * pd.e_k(lp, n) / pd.d_k(lp, 2 * n);
        bs.push(first - second);
    }
    let mut cs = Vec::with_capacity(n_max);
    for n in 0..n_max as i64 {
        let x = -pd.e_k(lp, n) / pd.d_k(lp, 2 * n);
        let value = pd.phi_n(lp, n).eval(&x);
        let factor = lp.gamma_n(n + 1).expect("n >= 0") * pd.d_k(lp, n - 1)
            / (pd.d_k(lp, 2 * n - 1) * pd.d_k(lp, 2 * n + 1));
        let c = -factor * value;
        if c.is_zero() {
            return Err(Error::ZeroC { n: n as usize + 1 });
        }
        cs.push(c);
    }
    Ttrr::new(bs, cs)
}

/// Moment-wise residual of `Dq(phi u) - Sq(psi u)`, for every moment both
/// sides can supply (empty when the horizon is too small).
pub fn pearson_residual(
    pd: &PearsonData,
    u: &MomentFunctional,
    lp: &LatticeParam,
) -> Result<Vec<Scalar>> {
    let phi = pd.phi();
    let psi = pd.psi();
    let need = phi.degree().unwrap_or(0).max(psi.degree().unwrap_or(0));
    if need > u.horizon() {
        return Ok(Vec::new());
    }
    let lhs = functional_dq(&leftmul(&phi, u)?, lp);
    let rhs = functional_sq(&leftmul(&psi, u)?, lp);
    Ok(lhs.sub(&rhs).moments().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::moments_from_ttrr;
    use crate::recurrence::alsc_ttrr;

    fn lp_half() -> LatticeParam {
        LatticeParam::new(Scalar::new(1, 2)).unwrap()
    }

    fn quarter_family_c(lp: &LatticeParam, sign: Sign, n: i64) -> Scalar {
        // C_{n+1} = (1 - q^(s(n+1)))(1 + q^(sn))/4
        let t = (Scalar::one() - lp.q_pow_signed(sign, n + 1))
            * (Scalar::one() + lp.q_pow_signed(sign, n));
        t * Scalar::new(1, 4)
    }

    #[test]
    fn pearson_map_reproduces_case1_family() {
        let lp = lp_half();
        let pd = PearsonData::appell_case1(Sign::Plus, &lp);
        assert_eq!(pd.a, Scalar::new(3, 4));
        assert_eq!(pd.c, Scalar::new(-3, 4));
        let t = ttrr_from_pearson(&pd, &lp, 12).unwrap();
        for n in 0..12 {
            assert_eq!(t.b(n).unwrap(), &Scalar::zero());
            assert_eq!(
                t.c(n + 1).unwrap(),
                &quarter_family_c(&lp, Sign::Plus, n as i64)
            );
        }
        // agrees with the (1,-1) Al-Salam-Chihara data at every tested lattice
        for v in [Scalar::new(1, 2), Scalar::new(2, 3), Scalar::new(3, 2)] {
            let lp = LatticeParam::new(v).unwrap();
            let pd = PearsonData::appell_case1(Sign::Plus, &lp);
            let t = ttrr_from_pearson(&pd, &lp, 12).unwrap();
            let asc = alsc_ttrr(&Scalar::one(), &Scalar::from_int(-1), &lp, 12).unwrap();
            assert_eq!(t, asc);
        }
    }

    #[test]
    fn pearson_map_mirror_sign_gives_inverse_base_family() {
        let lp = lp_half();
        let pd = PearsonData::appell_case1(Sign::Minus, &lp);
        // phi = (1/2)(q^(1/2) - q^(-1/2))(z^2 - 1) for s = -1
        assert_eq!(pd.a, Scalar::new(-3, 4));
        let t = ttrr_from_pearson(&pd, &lp, 10).unwrap();
        assert_eq!(t.c(1).unwrap(), &Scalar::new(-3, 2));
        for n in 0..10 {
            assert_eq!(
                t.c(n + 1).unwrap(),
                &quarter_family_c(&lp, Sign::Minus, n as i64)
            );
        }
    }

    #[test]
    fn b_vanishes_whenever_b_and_e_do() {
        let lp = LatticeParam::new(Scalar::new(2, 3)).unwrap();
        let pd = PearsonData::new(
            Scalar::new(1, 5),
            Scalar::zero(),
            Scalar::new(7, 2),
            Scalar::one(),
            Scalar::zero(),
        )
        .unwrap();
        let t = ttrr_from_pearson(&pd, &lp, 8).unwrap();
        assert!(t.b_all().iter().all(Scalar::is_zero));
    }

    #[test]
    fn residual_vanishes_on_matching_moments() {
        let lp = lp_half();
        let pd = PearsonData::appell_case1(Sign::Plus, &lp);
        let t = ttrr_from_pearson(&pd, &lp, 12).unwrap();
        let u = moments_from_ttrr(&t);
        let res = pearson_residual(&pd, &u, &lp).unwrap();
        assert_eq!(res.len(), 11);
        assert!(res.iter().all(Scalar::is_zero));
    }

    #[test]
    fn residual_detects_perturbation() {
        let lp = lp_half();
        let mut pd = PearsonData::appell_case1(Sign::Plus, &lp);
        let t = ttrr_from_pearson(&pd, &lp, 12).unwrap();
        let u = moments_from_ttrr(&t);
        pd.c = &pd.c + Scalar::one();
        let res = pearson_residual(&pd, &u, &lp).unwrap();
        assert!(res[..5.min(res.len())].iter().any(|r| !r.is_zero()));
    }

    #[test]
    fn zero_horizon_gives_empty_residual() {
        let lp = lp_half();
        let pd = PearsonData::appell_case1(Sign::Plus, &lp);
        let u = MomentFunctional::from_moments(alloc::vec![Scalar::one()]);
        assert!(pearson_residual(&pd, &u, &lp).unwrap().is_empty());
    }

    #[test]
    fn inadmissible_pair_is_rejected() {
        let lp = lp_half();
        // d_1 = a gamma_1 + d alpha_1 = a + d*alpha; choose a = -alpha, d = 1
        let pd = PearsonData::new(
            -lp.alpha(),
            Scalar::zero(),
            Scalar::one(),
            Scalar::one(),
            Scalar::zero(),
        )
        .unwrap();
        assert_eq!(
            ttrr_from_pearson(&pd, &lp, 5),
            Err(Error::Inadmissible { k: 1 })
        );
        assert_eq!(
            PearsonData::new(
                Scalar::one(),
                Scalar::zero(),
                Scalar::one(),
                Scalar::zero(),
                Scalar::one()
            ),
            Err(Error::Inadmissible { k: 0 })
        );
    }

    #[test]
    fn degenerate_phi_yields_zero_c() {
        let lp = lp_half();
        // b = c = e = 0 makes phi_0(0) = 0, so C_1 = 0
        let pd = PearsonData::new(
            Scalar::one(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::one(),
            Scalar::zero(),
        )
        .unwrap();
        assert_eq!(ttrr_from_pearson(&pd, &lp, 5), Err(Error::ZeroC { n: 1 }));
    }
}
