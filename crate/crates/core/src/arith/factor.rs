use serde::{Deserialize, Serialize};

use super::prime::factorize;
use crate::error::{Error, Result};

/// A squarefree composite `n = p_1 * ... * p_m` with `p_1 < ... < p_m`, `m >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquarefreeFactorization {
    n: u64,
    primes: Vec<u64>,
}

impl SquarefreeFactorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Distinct prime divisors, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Number of prime factors.
    pub fn m(&self) -> usize {
        self.primes.len()
    }

    /// `p_j` with the one-based indexing used for Korselt bounds.
    ///
    /// # Panics
    ///
    /// If `j` is zero or greater than `m`.
    pub fn p(&self, j: usize) -> u64 {
        self.primes[j - 1]
    }
}

/// Factors `n`, failing unless it is squarefree and composite.
///
/// Values above `i64::MAX` are rejected since downstream arithmetic is signed.
pub fn factor_squarefree(n: u64) -> Result<SquarefreeFactorization> {
    if n < 2 {
        return Err(Error::OutOfDomain(n, "must be at least 2"));
    }
    if n > i64::MAX as u64 {
        return Err(Error::Overflow);
    }
    let factors = factorize(n);
    if let Some(&(prime, _)) = factors.iter().find(|&&(_, e)| e > 1) {
        return Err(Error::NotSquarefree { n, prime });
    }
    if factors.len() < 2 {
        return Err(Error::NotComposite(n));
    }
    Ok(SquarefreeFactorization {
        n,
        primes: factors.into_iter().map(|(p, _)| p).collect(),
    })
}
