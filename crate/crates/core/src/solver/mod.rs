//! Enumeration engines for Korselt sets, their inverse base-sets, and
//! Carmichael numbers.

mod base_set;
mod carmichael;
mod oracle;
mod pairs;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::SquarefreeFactorization;
use crate::error::Result;
use crate::korselt::KorseltSet;

pub use base_set::{base_set, BaseSetRecord};
pub use carmichael::{carmichael_scan, is_carmichael};
pub use oracle::{oracle_q_korselt_set, oracle_window};
pub use pairs::q_korselt_set;

/// Domain a Korselt set is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Q,
    Z,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Q => "q",
            Domain::Z => "z",
        })
    }
}

impl FromStr for Domain {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "q" => Ok(Domain::Q),
            "z" => Ok(Domain::Z),
            other => Err(format!("unknown domain {other:?} (expected q or z)")),
        }
    }
}

/// Integer Korselt set: the integer elements of the rational one.
pub fn z_korselt_set(f: &SquarefreeFactorization) -> Result<KorseltSet> {
    Ok(q_korselt_set(f)?.integers())
}

pub fn korselt_set(f: &SquarefreeFactorization, domain: Domain) -> Result<KorseltSet> {
    match domain {
        Domain::Q => q_korselt_set(f),
        Domain::Z => z_korselt_set(f),
    }
}

/// Cardinality of the Korselt set over `domain`; the trivial base `N` is not counted.
pub fn korselt_weight(f: &SquarefreeFactorization, domain: Domain) -> Result<usize> {
    Ok(korselt_set(f, domain)?.weight())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factor_squarefree, Rational};

    fn ints(ks: &KorseltSet) -> Vec<i64> {
        ks.bases().iter().map(Rational::num).collect()
    }

    #[test]
    fn z_sets() {
        let z = |n| z_korselt_set(&factor_squarefree(n).unwrap()).unwrap();
        assert_eq!(ints(&z(22)), [12]);
        assert_eq!(ints(&z(14)), [6, 8]);
        assert_eq!(ints(&z(15)), [4, 6, 7]);
    }

    #[test]
    fn weights() {
        let f22 = factor_squarefree(22).unwrap();
        assert_eq!(korselt_weight(&f22, Domain::Q).unwrap(), 1);
        let f = factor_squarefree(5183).unwrap();
        assert_eq!(korselt_weight(&f, Domain::Z).unwrap(), 9);
        assert_eq!(korselt_weight(&f, Domain::Q).unwrap(), 285);
    }

    #[test]
    fn domain_parsing() {
        assert_eq!("Q".parse::<Domain>().unwrap(), Domain::Q);
        assert_eq!("z".parse::<Domain>().unwrap(), Domain::Z);
        assert!("r".parse::<Domain>().is_err());
    }
}
