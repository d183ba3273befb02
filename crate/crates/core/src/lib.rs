//! Exact rational Korselt sets.
//!
//! For a squarefree composite `N` and a rational `alpha = a1/a2` in lowest
//! terms, `alpha` is a Korselt base of `N` when `a2*p - a1` divides
//! `a2*N - a1` for every prime `p | N`. This crate computes the complete set of
//! such bases (always finite), its integer restriction, closed-form bounds on
//! its elements, inverse queries over ranges of `N`, and Carmichael numbers
//! (the `alpha = 1` case).
//!
//! ```
//! use korselt::{factor_squarefree, q_korselt_set};
//!
//! let f = factor_squarefree(14).unwrap();
//! let set = q_korselt_set(&f).unwrap();
//! let shown: Vec<String> = set.bases().iter().map(|a| a.to_string()).collect();
//! assert_eq!(shown, ["7/2", "6", "8"]);
//! ```
//!
//! Range operations take a [`Jobs`] count. With the default `parallel`
//! feature they run on a rayon pool; results are ordered identically for any
//! job count.

pub mod arith;
pub mod error;
pub mod korselt;
pub mod par;
pub mod solver;
pub mod verify;

pub use arith::{factor_squarefree, is_prime, reduce, signed_divisors, Rational, SquarefreeFactorization};
pub use error::{Error, Result};
pub use korselt::{
    is_korselt_base, korselt_bounds, m_value, upper_attainment, BoundsReport, KorseltSet,
    UpperArgmin,
};
pub use par::Jobs;
pub use solver::{
    base_set, carmichael_scan, is_carmichael, korselt_set, korselt_weight, oracle_q_korselt_set,
    q_korselt_set, z_korselt_set, BaseSetRecord, Domain,
};
pub use verify::{run_suite, CheckId, Failure, TheoremReport};
