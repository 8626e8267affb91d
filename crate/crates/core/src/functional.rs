//! Truncated moment functionals and the adjoint operator actions.
//!
//! A linear functional on polynomials is represented by its moment vector
//! `mu_0..mu_N` on the monomial basis. Every operation declares its output
//! horizon; asking for more moments than available is a hard error rather
//! than a silent truncation, so a zero residual can never be an artifact of
//! lost information.
//!
//! The functional operators are defined through the pairings
//! `<Dq w, f> = -<w, Dq f>` and `<Sq w, f> = <w, Sq f>`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::LatticeParam;
use crate::operators::{apply_dq, apply_sq, monomial_images};
use crate::recurrence::{expand_in_basis, generate_ops, OpsFamily, Ttrr};
use crate::scalar::Scalar;
use crate::zpoly::ZPoly;

/// Moments `mu_0..mu_N` of a linear functional.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentFunctional {
    moments: Vec<Scalar>,
}

impl MomentFunctional {
    /// Builds from `mu_0..mu_N`; the list must be nonempty.
    pub fn from_moments(moments: Vec<Scalar>) -> Self {
        assert!(!moments.is_empty(), "a functional needs at least mu_0");
        MomentFunctional { moments }
    }

    /// Highest available moment index `N`.
    pub fn horizon(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moment(&self, n: usize) -> Result<&Scalar> {
        self.moments.get(n).ok_or(Error::HorizonExceeded {
            needed: n,
            available: self.horizon(),
        })
    }

    pub fn moments(&self) -> &[Scalar] {
        &self.moments
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        MomentFunctional {
            moments: self.moments.iter().map(|m| m * c).collect(),
        }
    }

    /// Moment-wise difference, truncated to the shorter horizon.
    pub fn sub(&self, other: &MomentFunctional) -> MomentFunctional {
        let n = self.moments.len().min(other.moments.len());
        MomentFunctional {
            moments: (0..n)
                .map(|k| &self.moments[k] - &other.moments[k])
                .collect(),
        }
    }
}

/// Moments of the regular functional normalized by `mu_0 = 1` that makes the
/// family of `ttrr` orthogonal: `mu_n` is the `P_0`-coefficient of `z^n` in
/// the family basis.
///
/// ```
/// use qappell_core::functional::moments_from_ttrr;
/// use qappell_core::recurrence::alsc_ttrr;
/// use qappell_core::{LatticeParam, Scalar};
///
/// let lp = LatticeParam::new(Scalar::new(1, 2)).unwrap();
/// let ttrr = alsc_ttrr(&Scalar::one(), &Scalar::from_int(-1), &lp, 4).unwrap();
/// let u = moments_from_ttrr(&ttrr);
/// assert_eq!(u.moment(2), Ok(&Scalar::new(3, 8))); // mu_2 = C_1
/// ```
pub fn moments_from_ttrr(ttrr: &Ttrr) -> MomentFunctional {
    let fam = generate_ops(ttrr);
    let n_max = ttrr.horizon();
    let mut moments = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let coeffs = expand_in_basis(&ZPoly::monomial(n, Scalar::one()), &fam);
        moments.push(coeffs[0].clone());
    }
    MomentFunctional::from_moments(moments)
}

/// `<u, p> = sum p_k mu_k`.
pub fn pair(u: &MomentFunctional, p: &ZPoly) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc + c * u.moment(k)?;
    }
    Ok(acc)
}

/// Left multiplication `f u`, defined by `<f u, p> = <u, f p>`. The result
/// keeps `horizon - deg f` moments.
pub fn leftmul(f: &ZPoly, u: &MomentFunctional) -> Result<MomentFunctional> {
    let Some(deg) = f.degree() else {
        // f = 0 annihilates everything at full horizon
        return Ok(MomentFunctional::from_moments(
            u.moments.iter().map(|_| Scalar::zero()).collect(),
        ));
    };
    if deg > u.horizon() {
        return Err(Error::HorizonExceeded {
            needed: deg,
            available: u.horizon(),
        });
    }
    let new_len = u.moments.len() - deg;
    let mut moments = Vec::with_capacity(new_len);
    for n in 0..new_len {
        // <f u, z^n> = sum_k f_k mu_{k+n}
        let mut acc = Scalar::zero();
        for (k, c) in f.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc + c * &u.moments[k + n];
        }
        moments.push(acc);
    }
    Ok(MomentFunctional::from_moments(moments))
}

/// `Dq u`, with `<Dq u, z^n> = -<u, Dq z^n>`. Horizon preserved: `Dq` lowers
/// degrees, so no moment beyond `n` is consumed.
pub fn functional_dq(u: &MomentFunctional, lp: &LatticeParam) -> MomentFunctional {
    let (dq, _) = monomial_images(lp, u.horizon());
    let moments = dq
        .iter()
        .map(|img| -pair(u, img).expect("image degree < n"))
        .collect();
    MomentFunctional::from_moments(moments)
}

/// `Sq u`, with `<Sq u, z^n> = <u, Sq z^n>`. Horizon preserved.
pub fn functional_sq(u: &MomentFunctional, lp: &LatticeParam) -> MomentFunctional {
    let (_, sq) = monomial_images(lp, u.horizon());
    let moments = sq
        .iter()
        .map(|img| pair(u, img).expect("image degree = n"))
        .collect();
    MomentFunctional::from_moments(moments)
}

/// `<e_n, P_j>` where `e_n = <u, P_n^2>^(-1) P_n u` is the dual basis of an
/// orthogonal family: equals `pair(u, P_n P_j) / pair(u, P_n^2)`, i.e. the
/// Kronecker delta when `u` is the orthogonality functional of `fam`.
pub fn dual_basis_pairing(
    fam: &OpsFamily,
    u: &MomentFunctional,
    n: usize,
    j: usize,
) -> Result<Scalar> {
    let pn = fam.poly(n).ok_or(Error::BadIndex { index: n as i64 })?;
    let pj = fam.poly(j).ok_or(Error::BadIndex { index: j as i64 })?;
    let cross = pair(u, &(pn * pj))?;
    let norm = pair(u, &(pn * pn))?;
    Ok(cross / norm)
}

/// Moment-wise residual of `f Dq w = Dq(Sq f w) - Sq(Dq f w)`; the list
/// covers every moment both sides can supply.
pub fn f_dq_w_residual(f: &ZPoly, u: &MomentFunctional, lp: &LatticeParam) -> Result<Vec<Scalar>> {
    let lhs = leftmul(f, &functional_dq(u, lp))?;
    let rhs_d = functional_dq(&leftmul(&apply_sq(f, lp), u)?, lp);
    let rhs_s = functional_sq(&leftmul(&apply_dq(f, lp), u)?, lp);
    let res = lhs.sub(&rhs_d.sub(&rhs_s));
    Ok(res.moments)
}

/// Moment-wise residual of
/// `alpha Dq^n Sq w = alpha_{n+1} Sq Dq^n w + gamma_n U_1 Dq^(n+1) w`.
pub fn dqn_sq_w_residual(n: usize, u: &MomentFunctional, lp: &LatticeParam) -> Result<Vec<Scalar>> {
    let ni = n as i64;
    let mut lhs = functional_sq(u, lp);
    for _ in 0..n {
        lhs = functional_dq(&lhs, lp);
    }
    let lhs = lhs.scaled(lp.alpha());

    let mut dqn = u.clone();
    for _ in 0..n {
        dqn = functional_dq(&dqn, lp);
    }
    let term1 = functional_sq(&dqn, lp).scaled(&lp.alpha_n(ni + 1).expect("n >= 0"));
    let term2 =
        leftmul(&lp.u1(), &functional_dq(&dqn, lp))?.scaled(&lp.gamma_n(ni).expect("n >= 0"));
    let res = lhs.sub(&term1).sub(&term2);
    Ok(res.moments)
}
