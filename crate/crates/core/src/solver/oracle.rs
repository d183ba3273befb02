use std::collections::BTreeSet;

use crate::arith::SquarefreeFactorization;
use crate::error::{Error, Result};
use crate::korselt::{is_korselt_base, m_value_raw, KorseltSet};

/// Half-width `W = 2 N^2` of the `k` window searched by the oracle.
///
/// Every base has the form `M(k, p_1)` with `k + 1 = (N - p_1) / (alpha - p_1)`.
/// Since `|alpha - p_1| >= 1/a2` and `a2 = (e - d)/(p_2 - p_1) <= 2N`,
/// `|k + 1| <= 2N (N - p_1) < 2 N^2`.
pub fn oracle_window(n: u64) -> Result<i64> {
    (n as i64)
        .checked_mul(n as i64)
        .and_then(|sq| sq.checked_mul(2))
        .ok_or(Error::Overflow)
}

/// Brute-force rational Korselt set: tests `M(k, p_1)` for every
/// `k in [-W, W] \ {-1}` directly against the base predicate.
///
/// Quadratic in `N`; meant as a cross-check for small `N`.
pub fn oracle_q_korselt_set(f: &SquarefreeFactorization) -> Result<KorseltSet> {
    let n = f.n();
    let p1 = f.p(1);
    let w = oracle_window(n)?;
    let mut found = BTreeSet::new();
    for k in -w..=w {
        if k == -1 {
            continue;
        }
        let alpha = m_value_raw(n, k, p1)?;
        if alpha.is_zero() || alpha.equals_integer(n) {
            continue;
        }
        if is_korselt_base(f, alpha)? {
            found.insert(alpha);
        }
    }
    KorseltSet::new(n, found.into_iter().collect())
}
