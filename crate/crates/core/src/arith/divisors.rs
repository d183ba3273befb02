use super::prime::factorize;
use crate::error::{Error, Result};

/// Positive divisors of `n`, ascending. Empty for `n = 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend_from_within(..len);
            let start = out.len() - len;
            for d in &mut out[start..] {
                *d *= pk;
            }
        }
    }
    out.sort_unstable();
    out
}

/// Every `d` with `d | n`, both signs, ascending. Has length `2 * tau(n)`.
pub fn signed_divisors(n: u64) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::OutOfDomain(n, "must be positive"));
    }
    if n > i64::MAX as u64 {
        return Err(Error::Overflow);
    }
    let positive = divisors(n);
    let mut out = Vec::with_capacity(2 * positive.len());
    out.extend(positive.iter().rev().map(|&d| -(d as i64)));
    out.extend(positive.iter().map(|&d| d as i64));
    Ok(out)
}
