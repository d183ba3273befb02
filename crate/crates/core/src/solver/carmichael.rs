use crate::arith::factor_squarefree;
use crate::par::{filter_map_range, Jobs};

/// Korselt's criterion: `n` is squarefree composite and `p - 1 | n - 1` for
/// every prime `p | n`.
pub fn is_carmichael(n: u64) -> bool {
    match factor_squarefree(n) {
        Ok(f) => f.primes().iter().all(|&p| (n - 1) % (p - 1) == 0),
        Err(_) => false,
    }
}

/// All Carmichael numbers `<= limit`, ascending.
pub fn carmichael_scan(limit: u64, jobs: Jobs) -> Vec<u64> {
    // Carmichael numbers are odd; skip the even half of the range.
    filter_map_range(2, limit, jobs, |n| (n % 2 == 1 && is_carmichael(n)).then_some(n))
}
