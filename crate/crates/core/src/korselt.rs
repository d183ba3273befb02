//! The Korselt base predicate and the closed-form quantities built on
//! `M(k, p) = (N + k p) / (k + 1)`.

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, reduce, Rational, SquarefreeFactorization};
use crate::error::{Error, Result};

/// Tests whether `alpha = a1/a2` is a Korselt base of `N`, i.e. whether
/// `a2*p - a1` divides `a2*N - a1` for every prime `p | N`.
///
/// A zero divisor (`alpha = p`) divides only zero, so such `alpha` fail.
/// `alpha = 0` and `alpha = N` are rejected outright.
pub fn is_korselt_base(f: &SquarefreeFactorization, alpha: Rational) -> Result<bool> {
    let n = f.n();
    if alpha.is_zero() || alpha.equals_integer(n) {
        return Err(Error::ExcludedBase { n, alpha });
    }
    let (a1, a2) = (alpha.num() as i128, alpha.den() as i128);
    let target = a2 * n as i128 - a1;
    Ok(f.primes().iter().all(|&p| {
        let divisor = a2 * p as i128 - a1;
        divisor != 0 && target % divisor == 0
    }))
}

/// `M(k, p) = (n + k p) / (k + 1)` for a prime divisor `p` of `n`.
pub fn m_value(n: u64, k: i64, p: u64) -> Result<Rational> {
    if k == -1 {
        return Err(Error::SingularIndex);
    }
    if p < 2 || n % p != 0 || !is_prime(p) {
        return Err(Error::NotPrimeDivisor { n, p });
    }
    m_value_raw(n, k, p)
}

/// `M(k, p)` without validating `k` or `p`.
pub(crate) fn m_value_raw(n: u64, k: i64, p: u64) -> Result<Rational> {
    let num = (k as i128)
        .checked_mul(p as i128)
        .and_then(|kp| kp.checked_add(n as i128))
        .ok_or(Error::Overflow)?;
    reduce(num, k as i128 + 1)
}

/// Which candidate realizes the upper bound `min(M(m-1, p_{m-1}), M(m, p_m))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperArgmin {
    /// `M(m-1, p_{m-1})`
    Penultimate,
    /// `M(m, p_m)`
    Last,
    Tie,
}

/// Lower and upper rational bounds enclosing every Korselt base of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: u64,
    /// `M(-m-2, p_1)`
    pub lower: Rational,
    pub upper: Rational,
    pub upper_argmin: UpperArgmin,
}

pub fn korselt_bounds(f: &SquarefreeFactorization) -> Result<BoundsReport> {
    let n = f.n();
    let m = f.m() as i64;
    let lower = m_value(n, -m - 2, f.p(1))?;
    let penultimate = m_value(n, m - 1, f.p(f.m() - 1))?;
    let last = m_value(n, m, f.p(f.m()))?;
    let (upper, upper_argmin) = match penultimate.cmp(&last) {
        std::cmp::Ordering::Less => (penultimate, UpperArgmin::Penultimate),
        std::cmp::Ordering::Greater => (last, UpperArgmin::Last),
        std::cmp::Ordering::Equal => (last, UpperArgmin::Tie),
    };
    Ok(BoundsReport {
        n,
        lower,
        upper,
        upper_argmin,
    })
}

/// The rational Korselt set of `n` over some domain, ascending, with `0` and
/// `n` excluded.
///
/// Construction normalizes order and rejects the excluded values but does not
/// re-run the base predicate; callers producing sets are responsible for
/// soundness, and `verify` checks it independently.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KorseltSet {
    n: u64,
    bases: Vec<Rational>,
}

impl KorseltSet {
    pub fn new(n: u64, mut bases: Vec<Rational>) -> Result<Self> {
        bases.sort_unstable();
        bases.dedup();
        if let Some(&alpha) = bases
            .iter()
            .find(|a| a.is_zero() || a.equals_integer(n))
        {
            return Err(Error::ExcludedBase { n, alpha });
        }
        Ok(KorseltSet { n, bases })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn bases(&self) -> &[Rational] {
        &self.bases
    }

    pub fn weight(&self) -> usize {
        self.bases.len()
    }

    pub fn contains(&self, alpha: &Rational) -> bool {
        self.bases.binary_search(alpha).is_ok()
    }

    fn split(&self) -> usize {
        self.bases.partition_point(|a| a.is_negative())
    }

    /// `beta_1 < ... < beta_t < 0`.
    pub fn negatives(&self) -> &[Rational] {
        &self.bases[..self.split()]
    }

    /// `0 < gamma_1 < ... < gamma_r`.
    pub fn positives(&self) -> &[Rational] {
        &self.bases[self.split()..]
    }

    /// Keeps only the integer bases.
    pub fn integers(&self) -> KorseltSet {
        KorseltSet {
            n: self.n,
            bases: self.bases.iter().copied().filter(Rational::is_integer).collect(),
        }
    }
}

/// Smallest `j` in `1..=m` with `M(j, p_j)` in the set, if any.
pub fn upper_attainment(f: &SquarefreeFactorization, ks: &KorseltSet) -> Result<Option<usize>> {
    for j in 1..=f.m() {
        if ks.contains(&m_value(f.n(), j as i64, f.p(j))?) {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_squarefree;
    use proptest::prelude::*;

    fn q(num: i128, den: i128) -> Rational {
        reduce(num, den).unwrap()
    }

    fn fact(n: u64) -> SquarefreeFactorization {
        factor_squarefree(n).unwrap()
    }

    fn set(n: u64, bases: &[(i128, i128)]) -> KorseltSet {
        KorseltSet::new(n, bases.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    #[test]
    fn predicate_examples() {
        assert!(is_korselt_base(&fact(10), q(5, 2)).unwrap());
        assert!(is_korselt_base(&fact(14), q(8, 1)).unwrap());
        // 7 - 2 = 5 does not divide 10 - 7 = 3
        assert!(!is_korselt_base(&fact(10), q(7, 1)).unwrap());
    }

    #[test]
    fn prime_divisor_as_base_is_rejected_by_zero_divisor() {
        assert!(!is_korselt_base(&fact(10), q(2, 1)).unwrap());
        assert!(!is_korselt_base(&fact(10), q(5, 1)).unwrap());
    }

    #[test]
    fn excluded_bases_are_domain_errors() {
        assert!(matches!(
            is_korselt_base(&fact(10), Rational::ZERO),
            Err(Error::ExcludedBase { .. })
        ));
        assert!(matches!(
            is_korselt_base(&fact(10), q(10, 1)),
            Err(Error::ExcludedBase { .. })
        ));
    }

    #[test]
    fn m_value_examples() {
        assert_eq!(m_value(10, 1, 2).unwrap(), q(6, 1));
        assert_eq!(m_value(15, 2, 5).unwrap(), q(25, 3));
        assert_eq!(m_value(30, 0, 3).unwrap(), q(30, 1));
        assert_eq!(m_value(10, -1, 2), Err(Error::SingularIndex));
        assert!(matches!(m_value(10, 1, 3), Err(Error::NotPrimeDivisor { .. })));
    }

    #[test]
    fn bounds_examples() {
        let b10 = korselt_bounds(&fact(10)).unwrap();
        assert_eq!(b10.upper, q(6, 1));
        assert_eq!(b10.upper_argmin, UpperArgmin::Penultimate);
        let b15 = korselt_bounds(&fact(15)).unwrap();
        assert_eq!(b15.upper, q(25, 3));
        assert_eq!(b15.upper_argmin, UpperArgmin::Last);
        let b6 = korselt_bounds(&fact(6)).unwrap();
        // M(-4, 2) = (6 - 8) / -3; min(M(1, 2), M(2, 3)) = min(4, 4)
        assert_eq!(b6.lower, q(2, 3));
        assert_eq!(b6.upper, q(4, 1));
        assert_eq!(b6.upper_argmin, UpperArgmin::Tie);
    }

    #[test]
    fn attainment_examples() {
        let ks10 = set(10, &[(5, 2), (10, 3), (4, 1), (14, 3), (6, 1)]);
        assert_eq!(upper_attainment(&fact(10), &ks10).unwrap(), Some(1));
        let ks15 = set(
            15,
            &[
                (4, 1), (6, 1), (7, 1), (5, 2), (10, 3), (25, 7), (15, 4),
                (45, 11), (13, 3), (9, 2), (33, 7), (27, 5), (5, 3),
            ],
        );
        assert_eq!(upper_attainment(&fact(15), &ks15).unwrap(), None);
        let ks6 = set(
            6,
            &[(4, 1), (3, 2), (9, 4), (12, 5), (18, 7), (10, 3), (5, 2), (8, 3), (14, 5)],
        );
        assert_eq!(upper_attainment(&fact(6), &ks6).unwrap(), Some(1));
    }

    #[test]
    fn set_partitions_by_sign() {
        let ks = set(10, &[(6, 1), (-3, 1), (5, 2), (-1, 2)]);
        assert_eq!(ks.negatives(), &[q(-3, 1), q(-1, 2)]);
        assert_eq!(ks.positives(), &[q(5, 2), q(6, 1)]);
        assert_eq!(ks.weight(), 4);
        assert_eq!(ks.integers().bases(), &[q(-3, 1), q(6, 1)]);
        assert!(KorseltSet::new(10, vec![q(10, 1)]).is_err());
        assert!(KorseltSet::new(10, vec![Rational::ZERO]).is_err());
    }

    fn squarefree_composites(limit: u64) -> Vec<SquarefreeFactorization> {
        (2..=limit).filter_map(|n| factor_squarefree(n).ok()).collect()
    }

    fn arb_alpha() -> impl Strategy<Value = Rational> {
        (-5_000i128..5_000, 1i128..200).prop_map(|(a, b)| reduce(a, b).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        // (a2 p - a1) | (a2 N - a1)  <=>  (a2 p - a1) | (N - p) for reduced alpha.
        #[test]
        fn divisibility_reduction(alpha in arb_alpha()) {
            for f in squarefree_composites(500) {
                let (a1, a2) = (alpha.num() as i128, alpha.den() as i128);
                let n = f.n() as i128;
                for &p in f.primes() {
                    let d = a2 * p as i128 - a1;
                    let direct = if d == 0 { a2 * n - a1 == 0 } else { (a2 * n - a1) % d == 0 };
                    let reduced = if d == 0 { n - p as i128 == 0 } else { (n - p as i128) % d == 0 };
                    prop_assert_eq!(direct, reduced, "N={} p={} alpha={}", n, p, alpha);
                }
            }
        }

        #[test]
        fn m_value_minus_p_identity(n in 6u64..5_000, k in -10_000i64..10_000) {
            prop_assume!(k != -1);
            if let Ok(f) = factor_squarefree(n) {
                for &p in f.primes() {
                    let lhs = m_value(n, k, p).unwrap().checked_sub(Rational::from_integer(p as i64)).unwrap();
                    let rhs = reduce(n as i128 - p as i128, k as i128 + 1).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }

        #[test]
        fn predicate_ignores_representation(
            a in -2_000i128..2_000, b in 1i128..100, scale in 1i128..50, n in 6u64..2_000,
        ) {
            if let Ok(f) = factor_squarefree(n) {
                let alpha = reduce(a, b).unwrap();
                let scaled = reduce(a * scale, b * scale).unwrap();
                prop_assume!(!alpha.is_zero() && !alpha.equals_integer(n));
                prop_assert_eq!(is_korselt_base(&f, alpha).unwrap(), is_korselt_base(&f, scaled).unwrap());
            }
        }

        #[test]
        fn bounds_are_ordered(n in 6u64..200_000) {
            if let Ok(f) = factor_squarefree(n) {
                let b = korselt_bounds(&f).unwrap();
                prop_assert!(b.lower < b.upper);
                prop_assert!(b.upper <= Rational::from_integer(n as i64));
            }
        }
    }
}
