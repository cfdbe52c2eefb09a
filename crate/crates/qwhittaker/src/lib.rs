//! Exact arithmetic for q-deformed gl(n) Whittaker functions.
//!
//! Everything is computed over Q(q): lattice values are Laurent polynomials in
//! spectral variables z_1..z_n whose coefficients are rational functions of q
//! with integer-polynomial numerator and denominator. The crate builds, from the
//! bottom up:
//!
//! * dense polynomials and canonical rational functions in q (`polyq`, `ratfun`),
//!   plus their bivariate (q, t) analogues for the Macdonald lab (`polyqt`);
//! * sparse Laurent polynomials in several z variables over a generic
//!   coefficient ring (`laurent`);
//! * q-factorials, q-binomials, Gelfand-Zetlin patterns and interlacing
//!   enumeration (`qcomb`);
//! * the Whittaker function itself in three independent forms: the direct sum
//!   over GZ patterns, the q-binomial rewrite, and the interlacing recursion
//!   (`whittaker`);
//! * q-Toda difference operators, their duals on the lower lattice slot, the
//!   conjugated operators acting on the binomial form, and the braiding and
//!   adjointness checks that tie them together (`toda`);
//! * the q -> 0 character limit with Schur-function cross checks, and the
//!   modified q -> 1 limit with its pure-shift Toda operators (`characters`);
//! * Macdonald polynomials via Gram-Schmidt in the (q, t) inner product, the
//!   first-kind Macdonald difference operators, and the numeric degeneration of
//!   those operators to the q-Toda chain (`macdonald`, `degeneration`).

pub mod characters;
pub mod degeneration;
pub mod lattice;
pub mod laurent;
pub mod macdonald;
pub mod polyq;
pub mod polyqt;
pub mod qcomb;
pub mod ratfun;
pub mod rational;
pub mod toda;
pub mod whittaker;

pub use laurent::LaurentPolynomial;
pub use polyq::PolynomialQ;
pub use polyqt::{PolynomialQT, RationalFunctionQT};
pub use qcomb::GZPattern;
pub use ratfun::RationalFunctionQ;
pub use rational::{Integer, Rational};

/// Errors surfaced by fallible operations.
///
/// Internal invariant violations (mismatched variable counts produced inside
/// the crate, non-cancelling divisions that are guaranteed to cancel) are
/// debug-asserted instead; the variants here are the contract errors a caller
/// can trigger with legal-looking input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("pole at q = {0}")]
    PoleAt(String),

    #[error("q-factorial of a negative integer ({0})")]
    NegativeFactorial(i64),

    #[error("point lies outside the dominant cone: {0:?}")]
    OutsideDominantCone(Vec<i64>),

    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("rank out of range: {0}")]
    RankOutOfRange(String),

    #[error("coincident evaluation coordinates at indices {0} and {1}")]
    CoincidentCoordinates(usize, usize),

    #[error("degree bound exceeded: {0}")]
    DegreeBound(String),

    #[error("polynomial is not symmetric in its variables")]
    NotSymmetric,

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Outcome of an exact verification: pass, or fail with a printed residual.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub pass: bool,
    /// Serialized residual witness, present exactly when the check failed.
    pub residual: Option<String>,
}

impl CheckOutcome {
    pub fn passed() -> Self {
        CheckOutcome {
            pass: true,
            residual: None,
        }
    }

    pub fn failed(residual: impl Into<String>) -> Self {
        CheckOutcome {
            pass: false,
            residual: Some(residual.into()),
        }
    }

    /// Pass iff the residual is zero, keeping the witness otherwise.
    pub fn from_residual<T: std::fmt::Display>(residual: &T, is_zero: bool) -> Self {
        if is_zero {
            Self::passed()
        } else {
            Self::failed(residual.to_string())
        }
    }
}
