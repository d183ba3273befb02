//! Exact integer and rational primitives.

mod divisors;
mod factor;
mod prime;
mod rational;

pub use divisors::{divisors, signed_divisors};
pub use factor::{factor_squarefree, SquarefreeFactorization};
pub use prime::{factorize, is_prime};
pub use rational::{reduce, Rational};
