use thiserror::Error;

use crate::arith::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("{n} is not squarefree ({prime}^2 divides it)")]
    NotSquarefree { n: u64, prime: u64 },

    #[error("{0} is not composite")]
    NotComposite(u64),

    #[error("{0} is outside the supported domain: {1}")]
    OutOfDomain(u64, &'static str),

    /// `0` and `N` itself are never Korselt bases of `N`.
    #[error("{alpha} is excluded as a Korselt base of {n}")]
    ExcludedBase { n: u64, alpha: Rational },

    #[error("0 is never a Korselt base")]
    ZeroBase,

    #[error("M(k, p) is undefined for k = -1")]
    SingularIndex,

    #[error("{p} is not a prime divisor of {n}")]
    NotPrimeDivisor { n: u64, p: u64 },

    #[error("arithmetic overflow")]
    Overflow,

    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}
