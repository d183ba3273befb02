use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `den >= 1` and `gcd(|num|, den) = 1`.
///
/// Components are stored as `i64`; every operation widens to `i128` before
/// multiplying, so products of two components are always exact. Narrowing
/// back to `i64` is checked and fails with [`Error::Overflow`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rational {
    num: i64,
    den: i64,
}

/// Canonical reduced form of `num/den`.
pub fn reduce(num: i128, den: i128) -> Result<Rational> {
    if den == 0 {
        return Err(Error::ZeroDenominator);
    }
    let g = num.gcd(&den);
    let (mut num, mut den) = (num / g, den / g);
    if den < 0 {
        num = num.checked_neg().ok_or(Error::Overflow)?;
        den = den.checked_neg().ok_or(Error::Overflow)?;
    }
    Ok(Rational {
        num: i64::try_from(num).map_err(|_| Error::Overflow)?,
        den: i64::try_from(den).map_err(|_| Error::Overflow)?,
    })
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self> {
        reduce(num, den)
    }

    pub const fn from_integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub const fn num(&self) -> i64 {
        self.num
    }

    pub const fn den(&self) -> i64 {
        self.den
    }

    pub const fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub const fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub const fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub const fn is_positive(&self) -> bool {
        self.num > 0
    }

    /// True iff this rational equals the unsigned integer `n`.
    pub fn equals_integer(&self, n: u64) -> bool {
        self.den == 1 && self.num >= 0 && self.num as u64 == n
    }

    pub fn checked_add(self, rhs: Rational) -> Result<Rational> {
        let (a, b, c, d) = self.wide(rhs);
        let num = (a * d).checked_add(c * b).ok_or(Error::Overflow)?;
        reduce(num, b * d)
    }

    pub fn checked_sub(self, rhs: Rational) -> Result<Rational> {
        let (a, b, c, d) = self.wide(rhs);
        let num = (a * d).checked_sub(c * b).ok_or(Error::Overflow)?;
        reduce(num, b * d)
    }

    pub fn checked_mul(self, rhs: Rational) -> Result<Rational> {
        let (a, b, c, d) = self.wide(rhs);
        reduce(a * c, b * d)
    }

    /// Lossy conversion, for human-readable output only.
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn wide(self, rhs: Rational) -> (i128, i128, i128, i128) {
        (
            self.num as i128,
            self.den as i128,
            rhs.num as i128,
            rhs.den as i128,
        )
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |part: &str| {
            part.trim()
                .parse::<i128>()
                .map_err(|_| Error::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((num, den)) => {
                let den = parse(den)?;
                if den == 0 {
                    return Err(Error::ZeroDenominator);
                }
                reduce(parse(num)?, den)
            }
            None => reduce(parse(s)?, 1),
        }
    }
}

#[derive(Deserialize)]
struct RawRational {
    num: i64,
    den: i64,
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawRational::deserialize(deserializer)?;
        let value = reduce(raw.num as i128, raw.den as i128).map_err(serde::de::Error::custom)?;
        if value.num != raw.num || value.den != raw.den {
            return Err(serde::de::Error::custom(format!(
                "non-canonical rational {}/{}",
                raw.num, raw.den
            )));
        }
        Ok(value)
    }
}
