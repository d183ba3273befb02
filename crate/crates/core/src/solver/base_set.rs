use serde::{Deserialize, Serialize};

use crate::arith::{factor_squarefree, Rational};
use crate::error::{Error, Result};
use crate::korselt::is_korselt_base;
use crate::par::{filter_map_range, Jobs};

/// The squarefree composites `N <= limit` for which `alpha` is a Korselt base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseSetRecord {
    pub alpha: Rational,
    pub limit: u64,
    pub members: Vec<u64>,
}

impl BaseSetRecord {
    pub fn weight(&self) -> usize {
        self.members.len()
    }
}

pub fn base_set(alpha: Rational, limit: u64, jobs: Jobs) -> Result<BaseSetRecord> {
    if alpha.is_zero() {
        return Err(Error::ZeroBase);
    }
    if limit > i64::MAX as u64 {
        return Err(Error::Overflow);
    }
    let members = filter_map_range(2, limit, jobs, |n| {
        if alpha.equals_integer(n) {
            return None;
        }
        let f = factor_squarefree(n).ok()?;
        // alpha is neither 0 nor n here, so the predicate cannot fail.
        matches!(is_korselt_base(&f, alpha), Ok(true)).then_some(n)
    });
    Ok(BaseSetRecord {
        alpha,
        limit,
        members,
    })
}
