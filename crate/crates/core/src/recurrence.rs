//! Monic orthogonal polynomial sequences from three-term recurrences.
//!
//! A family is generated from its recurrence data
//! `P_{n+1} = (z - B_n) P_n - C_n P_{n-1}`, `P_{-1} = 0`, `P_0 = 1`,
//! materialized up to a horizon `N`. Regularity (`C_n != 0`) is checked at
//! construction.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::LatticeParam;
use crate::scalar::Scalar;
use crate::zpoly::ZPoly;

/// Three-term recurrence data: `B_0..B_N` and `C_1..C_N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ttrr {
    b: Vec<Scalar>,
    c: Vec<Scalar>,
}

impl Ttrr {
    /// Builds from `B_0..B_N` (length `N+1`) and `C_1..C_N` (length `N`),
    /// rejecting any vanishing `C_n`.
    pub fn new(b: Vec<Scalar>, c: Vec<Scalar>) -> Result<Self> {
        assert_eq!(b.len(), c.len() + 1, "need one more B than C");
        if let Some(i) = c.iter().position(Scalar::is_zero) {
            return Err(Error::ZeroC { n: i + 1 });
        }
        Ok(Ttrr { b, c })
    }

    /// The horizon `N`: indices `B_0..B_N`, `C_1..C_N` are available and the
    /// generated family is `P_0..P_N`.
    pub fn horizon(&self) -> usize {
        self.c.len()
    }

    /// `B_n` for `0 <= n <= N`.
    pub fn b(&self, n: usize) -> Option<&Scalar> {
        self.b.get(n)
    }

    /// `C_n` for `1 <= n <= N`.
    pub fn c(&self, n: usize) -> Option<&Scalar> {
        n.checked_sub(1).and_then(|i| self.c.get(i))
    }

    pub fn b_all(&self) -> &[Scalar] {
        &self.b
    }

    pub fn c_all(&self) -> &[Scalar] {
        &self.c
    }

    /// `C_1 * C_2 * ... * C_n`.
    pub fn c_product(&self, n: usize) -> Option<Scalar> {
        if n > self.horizon() {
            return None;
        }
        Some(self.c[..n].iter().fold(Scalar::one(), |acc, x| acc * x))
    }
}

/// Monic Al-Salam-Chihara recurrence data at the base `q` of `lp`:
/// `B_n = (a+b) q^n / 2`, `C_n = (1 - a b q^(n-1)) (1 - q^n) / 4`.
///
/// Errors with `ZeroC` when `a b q^(n-1) = 1` for some `n <= n_max`.
pub fn alsc_ttrr(a: &Scalar, b: &Scalar, lp: &LatticeParam, n_max: usize) -> Result<Ttrr> {
    let half_sum = (a + b) * Scalar::new(1, 2);
    let ab = a * b;
    let quarter = Scalar::new(1, 4);
    let bs = (0..=n_max as i64)
        .map(|n| &half_sum * lp.q_pow(n))
        .collect();
    let cs = (1..=n_max as i64)
        .map(|n| {
            let t = (Scalar::one() - &ab * lp.q_pow(n - 1)) * (Scalar::one() - lp.q_pow(n));
            t * &quarter
        })
        .collect();
    Ttrr::new(bs, cs)
}

/// A generated monic family `P_0..P_N` together with its recurrence data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpsFamily {
    polys: Vec<ZPoly>,
    ttrr: Ttrr,
}

/// Runs the recurrence, producing `P_0..P_N` exactly.
pub fn generate_ops(ttrr: &Ttrr) -> OpsFamily {
    let n_max = ttrr.horizon();
    let mut polys = Vec::with_capacity(n_max + 1);
    polys.push(ZPoly::one());
    if n_max >= 1 {
        let z = ZPoly::var();
        polys.push(&z - &ZPoly::constant(ttrr.b(0).unwrap().clone()));
        for n in 1..n_max {
            let shift = &ZPoly::var() - &ZPoly::constant(ttrr.b(n).unwrap().clone());
            let next = &(&shift * &polys[n]) - &polys[n - 1].scaled(ttrr.c(n).unwrap());
            polys.push(next);
        }
    }
    OpsFamily {
        polys,
        ttrr: ttrr.clone(),
    }
}

impl OpsFamily {
    pub fn horizon(&self) -> usize {
        self.ttrr.horizon()
    }

    /// `P_n` for `n <= N`.
    pub fn poly(&self, n: usize) -> Option<&ZPoly> {
        self.polys.get(n)
    }

    pub fn polys(&self) -> &[ZPoly] {
        &self.polys
    }

    pub fn ttrr(&self) -> &Ttrr {
        &self.ttrr
    }
}

/// Expands `p` in the family basis: returns `c_0..c_d` with
/// `p = sum c_k P_k`, by repeated leading-term elimination (each `P_k` is
/// monic of degree `k`). The zero polynomial yields an empty list.
///
/// Panics if `deg p` exceeds the family horizon.
pub fn expand_in_basis(p: &ZPoly, fam: &OpsFamily) -> Vec<Scalar> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    assert!(
        deg <= fam.horizon(),
        "expand_in_basis: degree {deg} exceeds horizon {}",
        fam.horizon()
    );
    let mut coeffs = vec![Scalar::zero(); deg + 1];
    let mut rest = p.clone();
    while let Some(k) = rest.degree() {
        let c = rest.leading().unwrap().clone();
        rest = &rest - &fam.poly(k).unwrap().scaled(&c);
        coeffs[k] = c;
    }
    coeffs
}

/// The two coefficients below the leading term:
/// `P_n = z^n + f_n z^(n-1) + g_n z^(n-2) + ...`, with
/// `f_0 = g_0 = g_1 = 0`. They satisfy `B_n = f_n - f_{n+1}` and
/// `C_n = g_n - g_{n+1} - f_n B_n`.
pub fn subleading(fam: &OpsFamily, n: usize) -> Result<(Scalar, Scalar)> {
    let p = fam.poly(n).ok_or(Error::BadIndex { index: n as i64 })?;
    let f = if n >= 1 {
        p.coeff(n - 1)
    } else {
        Scalar::zero()
    };
    let g = if n >= 2 {
        p.coeff(n - 2)
    } else {
        Scalar::zero()
    };
    Ok((f, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp_half() -> LatticeParam {
        LatticeParam::new(Scalar::new(1, 2)).unwrap()
    }

    /// The first Appell case family at q = 1/4: B = 0, C_1 = 3/8, ...
    fn case1_ttrr(n_max: usize) -> Ttrr {
        alsc_ttrr(&Scalar::one(), &Scalar::from_int(-1), &lp_half(), n_max).unwrap()
    }

    #[test]
    fn zero_c_is_rejected() {
        let r = Ttrr::new(vec![Scalar::zero(), Scalar::zero()], vec![Scalar::zero()]);
        assert_eq!(r, Err(Error::ZeroC { n: 1 }));
    }

    #[test]
    fn alsc_values_at_q_quarter() {
        let t = case1_ttrr(4);
        assert_eq!(t.b(0).unwrap(), &Scalar::zero());
        assert_eq!(t.b(3).unwrap(), &Scalar::zero());
        assert_eq!(t.c(1).unwrap(), &Scalar::new(3, 8));
        assert_eq!(t.c(2).unwrap(), &Scalar::new(75, 256));
    }

    #[test]
    fn alsc_rogers_q_hermite() {
        // a = b = 0: C_n = (1 - q^n)/4
        let lp = lp_half();
        let t = alsc_ttrr(&Scalar::zero(), &Scalar::zero(), &lp, 5).unwrap();
        for n in 1..=5 {
            let expected = (Scalar::one() - lp.q_pow(n as i64)) * Scalar::new(1, 4);
            assert_eq!(t.c(n).unwrap(), &expected);
        }
        assert_eq!(t.c(1).unwrap(), &Scalar::new(3, 16));
    }

    #[test]
    fn alsc_detects_zero_c() {
        // a*b = 1/q makes C_2 vanish: 1 - a b q = 0
        let lp = lp_half();
        let t = alsc_ttrr(&Scalar::from_int(4), &Scalar::one(), &lp, 3);
        assert_eq!(t, Err(Error::ZeroC { n: 2 }));
    }

    #[test]
    fn generated_family_first_steps() {
        let fam = generate_ops(&case1_ttrr(6));
        assert_eq!(fam.poly(0).unwrap(), &ZPoly::one());
        assert_eq!(fam.poly(1).unwrap(), &ZPoly::var());
        let p2 = ZPoly::from_coeffs(vec![Scalar::new(-3, 8), Scalar::zero(), Scalar::one()]);
        assert_eq!(fam.poly(2).unwrap(), &p2);
    }

    #[test]
    fn family_is_monic_and_satisfies_recurrence() {
        let t = alsc_ttrr(&Scalar::new(1, 3), &Scalar::new(-1, 2), &lp_half(), 12).unwrap();
        let fam = generate_ops(&t);
        for n in 0..=12usize {
            let p = fam.poly(n).unwrap();
            assert_eq!(p.degree(), Some(n));
            assert!(p.leading().unwrap().is_one());
        }
        for n in 1..12usize {
            let shift = &ZPoly::var() - &ZPoly::constant(t.b(n).unwrap().clone());
            let lhs = fam.poly(n + 1).unwrap().clone();
            let rhs = &(&shift * fam.poly(n).unwrap())
                - &fam.poly(n - 1).unwrap().scaled(t.c(n).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn expand_in_basis_examples() {
        let fam = generate_ops(&case1_ttrr(6));
        // basis element
        let c = expand_in_basis(fam.poly(3).unwrap(), &fam);
        assert_eq!(
            c,
            vec![
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::one()
            ]
        );
        // z = P_1 when B_0 = 0
        assert_eq!(
            expand_in_basis(&ZPoly::var(), &fam),
            vec![Scalar::zero(), Scalar::one()]
        );
        // z^2 = P_2 + C_1 P_0
        assert_eq!(
            expand_in_basis(&ZPoly::monomial(2, Scalar::one()), &fam),
            vec![Scalar::new(3, 8), Scalar::zero(), Scalar::one()]
        );
        assert!(expand_in_basis(&ZPoly::zero(), &fam).is_empty());
    }

    #[test]
    fn expand_is_left_inverse_of_linear_combination() {
        let t = alsc_ttrr(&Scalar::new(2, 5), &Scalar::new(1, 7), &lp_half(), 8).unwrap();
        let fam = generate_ops(&t);
        let coeffs = [
            Scalar::new(1, 2),
            Scalar::from_int(-3),
            Scalar::zero(),
            Scalar::new(7, 11),
            Scalar::one(),
        ];
        let p = coeffs
            .iter()
            .enumerate()
            .fold(ZPoly::zero(), |acc, (k, c)| {
                &acc + &fam.poly(k).unwrap().scaled(c)
            });
        assert_eq!(expand_in_basis(&p, &fam), coeffs.to_vec());
    }

    #[test]
    fn subleading_values_and_relations() {
        let fam = generate_ops(&case1_ttrr(8));
        assert_eq!(
            subleading(&fam, 0).unwrap(),
            (Scalar::zero(), Scalar::zero())
        );
        assert_eq!(
            subleading(&fam, 2).unwrap(),
            (Scalar::zero(), Scalar::new(-3, 8))
        );
        assert!(subleading(&fam, 9).is_err());

        // B_n = f_n - f_{n+1}, C_n = g_n - g_{n+1} - f_n B_n on a family with
        // nonzero B as well
        let t = alsc_ttrr(&Scalar::new(1, 2), &Scalar::new(1, 3), &lp_half(), 10).unwrap();
        let fam = generate_ops(&t);
        for n in 0..10usize {
            let (f_n, g_n) = subleading(&fam, n).unwrap();
            let (f_n1, g_n1) = subleading(&fam, n + 1).unwrap();
            assert_eq!(&f_n - &f_n1, t.b(n).unwrap().clone());
            if n >= 1 {
                let c = &g_n - &g_n1 - &f_n * t.b(n).unwrap();
                assert_eq!(&c, t.c(n).unwrap());
            }
        }
        // f_1 = -B_0
        let (f1, _) = subleading(&fam, 1).unwrap();
        assert_eq!(f1, -t.b(0).unwrap());
    }
}
