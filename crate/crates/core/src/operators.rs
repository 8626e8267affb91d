//! The divided-difference operator `Dq` and the averaging operator `Sq`.
//!
//! On the Laurent side the half-step shifts `x(s +/- 1/2)` are the
//! substitutions `w -> v*w` and `w -> w/v`, and the denominator
//! `x(s+1/2) - x(s-1/2)` is `(v - 1/v)(w - 1/w)/2` in closed form, so
//!
//! ```text
//! Dq p = [p^(v*w) - p^(w/v)] / [(v - 1/v)(w - 1/w)/2]
//! Sq p = [p^(v*w) + p^(w/v)] / 2
//! ```
//!
//! where `p^` is the symmetric Laurent image of `p`. Both results convert
//! back to polynomials in `z`; the division is always exact, so any
//! `NotDivisible`/`NotSymmetric` escaping this module is an internal bug.

use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::LatticeParam;
use crate::laurent::{laurent_to_z, z_to_laurent, LaurentPoly};
use crate::scalar::Scalar;
use crate::zpoly::ZPoly;

/// `Dq p`: lowers the degree by exactly one and multiplies the leading
/// coefficient by `gamma_n`.
pub fn apply_dq(p: &ZPoly, lp: &LatticeParam) -> ZPoly {
    if p.degree().unwrap_or(0) == 0 {
        return ZPoly::zero();
    }
    let hat = z_to_laurent(p);
    let up = hat.scale_var(lp.v()).expect("v != 0");
    let down = hat.scale_var(&lp.v().recip()).expect("1/v != 0");
    let num = &up - &down;
    let h = (lp.v() - lp.v().recip()) * Scalar::new(1, 2);
    let den = LaurentPoly::from_parts(-1, vec![-&h, Scalar::zero(), h]);
    let quot = num.divide_exact(&den).expect("divided difference is exact");
    laurent_to_z(&quot).expect("divided difference is symmetric")
}

/// `Sq p`: preserves the degree and multiplies the leading coefficient by
/// `alpha_n`.
pub fn apply_sq(p: &ZPoly, lp: &LatticeParam) -> ZPoly {
    if p.is_zero() {
        return ZPoly::zero();
    }
    let hat = z_to_laurent(p);
    let up = hat.scale_var(lp.v()).expect("v != 0");
    let down = hat.scale_var(&lp.v().recip()).expect("1/v != 0");
    let half = Scalar::new(1, 2);
    let avg = LaurentPoly::from_parts(0, vec![half]);
    let sum = &(&up + &down) * &avg;
    laurent_to_z(&sum).expect("average is symmetric")
}

/// `Dq^n p` by iterated application.
pub fn apply_dq_n(p: &ZPoly, lp: &LatticeParam, n: usize) -> ZPoly {
    let mut acc = p.clone();
    for _ in 0..n {
        acc = apply_dq(&acc, lp);
    }
    acc
}

/// All monomial images `Dq z^m` and `Sq z^m` for `m <= n_max` in one pass,
/// via the product rules applied to `z^m = z * z^(m-1)`:
///
/// ```text
/// Dq z^m = Sq z^(m-1) + alpha z Dq z^(m-1)
/// Sq z^m = U_2 Dq z^(m-1) + alpha z Sq z^(m-1)
/// ```
///
/// This is what the adjoint actions on moment functionals use; it agrees
/// with [`apply_dq`]/[`apply_sq`] term by term.
pub fn monomial_images(lp: &LatticeParam, n_max: usize) -> (Vec<ZPoly>, Vec<ZPoly>) {
    let mut dq = Vec::with_capacity(n_max + 1);
    let mut sq = Vec::with_capacity(n_max + 1);
    dq.push(ZPoly::zero());
    sq.push(ZPoly::one());
    let alpha_z = ZPoly::monomial(1, lp.alpha().clone());
    let u2 = lp.u2();
    for m in 1..=n_max {
        let d = &sq[m - 1] + &(&alpha_z * &dq[m - 1]);
        let s = &(&u2 * &dq[m - 1]) + &(&alpha_z * &sq[m - 1]);
        dq.push(d);
        sq.push(s);
    }
    (dq, sq)
}

/// Residual of the product rule `Dq(fg) = (Dq f)(Sq g) + (Sq f)(Dq g)`;
/// zero for every `f`, `g`.
pub fn dq_product_residual(f: &ZPoly, g: &ZPoly, lp: &LatticeParam) -> ZPoly {
    let lhs = apply_dq(&(f * g), lp);
    let rhs = &(&apply_dq(f, lp) * &apply_sq(g, lp)) + &(&apply_sq(f, lp) * &apply_dq(g, lp));
    &lhs - &rhs
}

/// Residual of `Sq(fg) = (Dq f)(Dq g) U_2 + (Sq f)(Sq g)`.
pub fn sq_product_residual(f: &ZPoly, g: &ZPoly, lp: &LatticeParam) -> ZPoly {
    let lhs = apply_sq(&(f * g), lp);
    let rhs = &(&(&apply_dq(f, lp) * &apply_dq(g, lp)) * &lp.u2())
        + &(&apply_sq(f, lp) * &apply_sq(g, lp));
    &lhs - &rhs
}

/// Residual of `alpha Sq^2 f = Sq(U_1 Dq f) + U_2 Dq^2 f + alpha f`.
pub fn sq_squared_residual(f: &ZPoly, lp: &LatticeParam) -> ZPoly {
    let lhs = apply_sq(&apply_sq(f, lp), lp).scaled(lp.alpha());
    let rhs = &(&apply_sq(&(&lp.u1() * &apply_dq(f, lp)), lp)
        + &(&lp.u2() * &apply_dq_n(f, lp, 2)))
        + &f.scaled(lp.alpha());
    &lhs - &rhs
}

/// Residual of the commutation rule
/// `Dq^n Sq f = alpha_n Sq Dq^n f + gamma_n U_1 Dq^(n+1) f`.
pub fn dqn_sq_residual(n: usize, f: &ZPoly, lp: &LatticeParam) -> ZPoly {
    let lhs = apply_dq_n(&apply_sq(f, lp), lp, n);
    let alpha_n = lp.alpha_n(n as i64).expect("n >= 0");
    let gamma_n = lp.gamma_n(n as i64).expect("n >= 0");
    let rhs = &apply_sq(&apply_dq_n(f, lp, n), lp).scaled(&alpha_n)
        + &(&lp.u1() * &apply_dq_n(f, lp, n + 1)).scaled(&gamma_n);
    &lhs - &rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn lp(n: i64, d: i64) -> LatticeParam {
        LatticeParam::new(Scalar::new(n, d)).unwrap()
    }

    fn zn(n: usize) -> ZPoly {
        ZPoly::monomial(n, Scalar::one())
    }

    #[test]
    fn dq_kills_constants() {
        let lp = lp(1, 2);
        assert!(apply_dq(&ZPoly::constant(Scalar::new(7, 3)), &lp).is_zero());
        assert!(apply_dq(&ZPoly::zero(), &lp).is_zero());
    }

    #[test]
    fn sq_fixes_constants() {
        let lp = lp(1, 2);
        let c = ZPoly::constant(Scalar::new(7, 3));
        assert_eq!(apply_sq(&c, &lp), c);
    }

    #[test]
    fn dq_of_z_squared_and_cubed() {
        let lp = lp(1, 2);
        // Dq z^2 = gamma_2 z = 5/2 z at v = 1/2
        assert_eq!(apply_dq(&zn(2), &lp), ZPoly::monomial(1, Scalar::new(5, 2)));
        // Dq z^3 = 21/4 z^2 - 9/16
        let expected = ZPoly::from_coeffs(vec![
            Scalar::new(-9, 16),
            Scalar::zero(),
            Scalar::new(21, 4),
        ]);
        assert_eq!(apply_dq(&zn(3), &lp), expected);
    }

    #[test]
    fn sq_of_z_and_z_squared() {
        let lp = lp(1, 2);
        assert_eq!(apply_sq(&zn(1), &lp), ZPoly::monomial(1, Scalar::new(5, 4)));
        let expected = ZPoly::from_coeffs(vec![
            Scalar::new(-9, 16),
            Scalar::zero(),
            Scalar::new(17, 8),
        ]);
        assert_eq!(apply_sq(&zn(2), &lp), expected);
    }

    #[test]
    fn degree_laws() {
        let lp = lp(2, 3);
        let p = ZPoly::from_coeffs(vec![
            Scalar::new(1, 3),
            Scalar::new(-2, 1),
            Scalar::new(7, 5),
            Scalar::one(),
        ]);
        assert_eq!(apply_dq(&p, &lp).degree(), Some(2));
        assert_eq!(apply_sq(&p, &lp).degree(), Some(3));
    }

    #[test]
    fn monomial_laws_to_degree_15() {
        // Dq z^n = gamma_n z^(n-1) + u_n z^(n-3) + lower
        // Sq z^n = alpha_n z^n + u_hat_n z^(n-2) + lower
        for lp in [lp(1, 2), lp(3, 2)] {
            for n in 0..=15usize {
                let ni = n as i64;
                let d = apply_dq(&zn(n), &lp);
                let s = apply_sq(&zn(n), &lp);
                if n >= 1 {
                    assert_eq!(d.coeff(n - 1), lp.gamma_n(ni).unwrap());
                }
                if n >= 3 {
                    assert_eq!(d.coeff(n - 3), lp.u_n(ni).unwrap());
                }
                let d_rest =
                    &d - &ZPoly::monomial(n.saturating_sub(1), d.coeff(n.saturating_sub(1)));
                if n >= 1 {
                    assert!(d_rest.degree().is_none_or(|k| k + 3 <= n));
                }
                assert_eq!(s.coeff(n), lp.alpha_n(ni).unwrap());
                if n >= 2 {
                    assert_eq!(s.coeff(n - 2), lp.u_hat_n(ni).unwrap());
                }
                let s_rest = &s - &ZPoly::monomial(n, s.coeff(n));
                assert!(s_rest.degree().is_none_or(|k| k + 2 <= n));
            }
        }
    }

    /// Pointwise oracle: evaluate the defining divided difference and average
    /// at explicit rational points w0, i.e. z0 = (w0 + 1/w0)/2, and compare
    /// with the polynomial the operator produced.
    #[test]
    fn operators_match_pointwise_definition() {
        let lp = lp(1, 2);
        let p = ZPoly::from_coeffs(vec![
            Scalar::new(1, 3),
            Scalar::new(-2, 1),
            Scalar::zero(),
            Scalar::new(7, 5),
            Scalar::new(1, 2),
        ]);
        let dqp = apply_dq(&p, &lp);
        let sqp = apply_sq(&p, &lp);
        let half = Scalar::new(1, 2);
        for w0 in [Scalar::new(2, 1), Scalar::new(3, 5), Scalar::new(-7, 4)] {
            let x = |w: &Scalar| (w + &w.recip()) * &half;
            let z0 = x(&w0);
            let z_up = x(&(&w0 * lp.v()));
            let z_down = x(&(&w0 / lp.v()));
            let diff = (p.eval(&z_up) - p.eval(&z_down)) / (&z_up - &z_down);
            assert_eq!(dqp.eval(&z0), diff);
            let avg = (p.eval(&z_up) + p.eval(&z_down)) * &half;
            assert_eq!(sqp.eval(&z0), avg);
        }
    }

    #[test]
    fn monomial_images_agree_with_direct_application() {
        for lp in [lp(1, 2), lp(2, 3), lp(3, 2)] {
            let (dq, sq) = monomial_images(&lp, 12);
            for m in 0..=12usize {
                let zm = zn(m);
                assert_eq!(dq[m], apply_dq(&zm, &lp), "Dq z^{m}");
                assert_eq!(sq[m], apply_sq(&zm, &lp), "Sq z^{m}");
            }
        }
    }

    #[test]
    fn operators_are_linear() {
        let lp = lp(2, 3);
        let f = ZPoly::from_coeffs(vec![Scalar::new(1, 2), Scalar::new(3, 1), Scalar::one()]);
        let g = ZPoly::from_coeffs(vec![Scalar::new(-1, 3), Scalar::new(2, 7)]);
        let a = Scalar::new(5, 3);
        let combo = &f.scaled(&a) + &g;
        assert_eq!(
            apply_dq(&combo, &lp),
            &apply_dq(&f, &lp).scaled(&a) + &apply_dq(&g, &lp)
        );
        assert_eq!(
            apply_sq(&combo, &lp),
            &apply_sq(&f, &lp).scaled(&a) + &apply_sq(&g, &lp)
        );
    }

    #[test]
    fn operators_invariant_under_v_inversion() {
        let lp = lp(1, 2);
        let inv = lp.inverted();
        let p = ZPoly::from_coeffs(vec![
            Scalar::new(1, 3),
            Scalar::new(-2, 1),
            Scalar::new(7, 5),
            Scalar::one(),
        ]);
        assert_eq!(apply_dq(&p, &lp), apply_dq(&p, &inv));
        assert_eq!(apply_sq(&p, &lp), apply_sq(&p, &inv));
    }

    #[test]
    fn product_rule_residuals_vanish() {
        let lp = lp(1, 2);
        let f = ZPoly::var();
        let g = ZPoly::var();
        assert!(dq_product_residual(&f, &g, &lp).is_zero());
        let f = ZPoly::from_coeffs(vec![Scalar::new(1, 2), Scalar::new(3, 1), Scalar::one()]);
        let g = ZPoly::from_coeffs(vec![
            Scalar::new(-1, 3),
            Scalar::new(2, 7),
            Scalar::new(5, 1),
        ]);
        assert!(dq_product_residual(&f, &g, &lp).is_zero());
        assert!(sq_product_residual(&f, &g, &lp).is_zero());
    }

    #[test]
    fn sq_squared_residual_vanishes() {
        for lp in [lp(1, 2), lp(2, 3), lp(3, 2)] {
            assert!(sq_squared_residual(&zn(2), &lp).is_zero());
            let f = ZPoly::from_coeffs(vec![
                Scalar::new(-1, 2),
                Scalar::new(1, 3),
                Scalar::new(2, 1),
                Scalar::one(),
            ]);
            assert!(sq_squared_residual(&f, &lp).is_zero());
        }
    }

    #[test]
    fn dqn_sq_residual_vanishes() {
        let lp = lp(1, 2);
        assert!(dqn_sq_residual(1, &zn(3), &lp).is_zero());
        let f = ZPoly::from_coeffs(
            (0..=6)
                .map(|k| Scalar::new(k as i64 - 3, k as i64 + 1))
                .collect::<Vec<_>>(),
        );
        for n in 0..=4 {
            assert!(dqn_sq_residual(n, &f, &lp).is_zero());
        }
    }
}
