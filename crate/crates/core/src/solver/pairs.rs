use num_integer::Integer;

use crate::arith::{signed_divisors, reduce, SquarefreeFactorization};
use crate::error::{Error, Result};
use crate::korselt::KorseltSet;

/// The complete rational Korselt set of `N`.
///
/// For reduced `alpha = a1/a2`, `a2*p - a1` divides `a2*N - a1` exactly when it
/// divides `N - p`. Anchoring on the two smallest primes `p < q`, every base
/// therefore yields divisors `d | N - p` and `e | N - q` with
/// `d = a2*p - a1`, `e = a2*q - a1`, so `a2 = (e - d) / (q - p)` and
/// `a1 = a2*p - d`. Enumerating the divisor pairs is finite and exhaustive;
/// each candidate is then checked against the remaining primes.
pub fn q_korselt_set(f: &SquarefreeFactorization) -> Result<KorseltSet> {
    let n = f.n() as i128;
    let (p, q) = (f.p(1) as i128, f.p(2) as i128);
    let gap = q - p;
    let ds = signed_divisors(f.n() - f.p(1))?;
    let es = signed_divisors(f.n() - f.p(2))?;

    let mut bases = Vec::new();
    for &d in &ds {
        let d = d as i128;
        // a2 >= 1 forces e > d.
        let start = es.partition_point(|&e| (e as i128) <= d);
        for &e in &es[start..] {
            let diff = e as i128 - d;
            if diff % gap != 0 {
                continue;
            }
            let a2 = diff / gap;
            let a1 = a2 * p - d;
            // Non-reduced candidates reappear reduced via (d/g, e/g).
            if a1.gcd(&a2) != 1 || a1 == 0 || (a2 == 1 && a1 == n) {
                continue;
            }
            let sound = f.primes()[2..].iter().all(|&pi| {
                let divisor = a2 * pi as i128 - a1;
                divisor != 0 && (n - pi as i128) % divisor == 0
            });
            if sound {
                bases.push(reduce(a1, a2).map_err(|_| Error::Overflow)?);
            }
        }
    }
    KorseltSet::new(f.n(), bases)
}
