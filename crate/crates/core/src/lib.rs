//! Exact operator calculus on the q-quadratic lattice.
//!
//! This crate implements the divided-difference operator `Dq` and the averaging
//! operator `Sq` acting on polynomials in the lattice variable
//! `z = (q^s + q^-s)/2`, together with the algebra that surrounds them:
//! three-term recurrences, Al-Salam-Chihara and Rogers q-Hermite families,
//! truncated moment functionals with the adjoint operator actions, Pearson-type
//! distributional equations and the Appell-type lowering relations
//! `Sq Dq P_n = k_n P_{n-1}` and `Dq Sq P_n = r_n P_{n-1}`.
//!
//! Every quantity is an arbitrary-precision rational, so each identity check
//! returns an exact residual: a verified identity produces a literal zero, not
//! a small floating-point number. The lattice base is supplied as `v = q^(1/2)`
//! so that all half-step shifts stay inside the rationals.
//!
//! ```
//! use qappell_core::operators::apply_dq;
//! use qappell_core::{LatticeParam, Scalar, ZPoly};
//!
//! // q = 1/4: Dq z^2 = gamma_2 z = (5/2) z
//! let lp = LatticeParam::new(Scalar::new(1, 2)).unwrap();
//! let z2 = ZPoly::monomial(2, Scalar::one());
//! assert_eq!(apply_dq(&z2, &lp), ZPoly::monomial(1, Scalar::new(5, 2)));
//! ```
//!
//! The crate is `no_std` (with `alloc`); IO, JSON encodings and the command
//! line front end live in the companion `qappell-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod appell;
pub mod error;
pub mod functional;
pub mod lattice;
pub mod laurent;
pub mod operators;
pub mod pearson;
pub mod recurrence;
pub mod scalar;
pub mod zpoly;

pub use error::{Error, Result};
pub use lattice::{LatticeParam, SeqKind, Sign};
pub use laurent::LaurentPoly;
pub use scalar::Scalar;
pub use zpoly::ZPoly;
