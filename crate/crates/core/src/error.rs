//! Error type shared by all modules.

use core::fmt;

/// Everything that can go wrong in this crate.
///
/// The variants `NotSymmetric` and `NotDivisible` signal internal
/// inconsistencies when they escape the Laurent layer: the operator
/// constructions guarantee symmetric intermediates and exact divisions for
/// every valid input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A Laurent polynomial expected to be symmetric under `w -> 1/w` is not.
    NotSymmetric,
    /// `scale_var` was asked to substitute `w -> 0`.
    ZeroScale,
    /// Laurent division left a nonzero remainder.
    NotDivisible,
    /// A sequence, family or coefficient index outside its defined range.
    BadIndex { index: i64 },
    /// A recurrence coefficient `C_n` vanished: the functional is not regular
    /// at depth `n`.
    ZeroC { n: usize },
    /// A computation needed more moments than the functional carries.
    HorizonExceeded { needed: usize, available: usize },
    /// A Pearson pair violates the admissibility condition `d_k != 0`.
    Inadmissible { k: i64 },
    /// The perturbed recurrence family has a vanishing denominator at `n`.
    PoleInFamily { n: usize },
    /// The lattice parameter must satisfy `v > 0` and `v != 1`.
    InvalidLattice,
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSymmetric => write!(f, "Laurent polynomial is not symmetric under w -> 1/w"),
            Error::ZeroScale => write!(f, "cannot substitute w -> c*w with c = 0"),
            Error::NotDivisible => write!(f, "Laurent division is not exact"),
            Error::BadIndex { index } => write!(f, "index {index} is outside the defined range"),
            Error::ZeroC { n } => write!(f, "recurrence coefficient C_{n} is zero (not regular)"),
            Error::HorizonExceeded { needed, available } => write!(
                f,
                "moment horizon exceeded: need {needed}, functional carries {available}"
            ),
            Error::Inadmissible { k } => write!(f, "Pearson pair is inadmissible: d_{k} = 0"),
            Error::PoleInFamily { n } => write!(f, "perturbed family has a pole at n = {n}"),
            Error::InvalidLattice => write!(f, "lattice parameter v must be positive and != 1"),
        }
    }
}

impl core::error::Error for Error {}
