//! Range verification of the structural inequalities satisfied by rational
//! Korselt sets: per-rank bounds on positive and negative bases, the
//! monotonicity of the `M(j, p_j)` bound candidates, the global enclosure, and
//! the attainment characterization.
//!
//! Every comparison is exact. A failed check carries the offending `N`, the
//! indices involved, and both sides of the violated relation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{factor_squarefree, reduce, Rational, SquarefreeFactorization};
use crate::error::{Error, Result};
use crate::korselt::{korselt_bounds, m_value, upper_attainment, KorseltSet};
use crate::par::{try_filter_map_range, Jobs};
use crate::solver::{oracle_q_korselt_set, q_korselt_set};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    /// `gamma_i <= M(j + r - i, p_j)` and `gamma_r <= N - 1`.
    Prop23Pos,
    /// `M(j - m - s - 2, p_j) <= beta_s`.
    Prop23Neg,
    /// `(N - beta_1) / (p_m - beta_1)` is an integer `>= 3`.
    Prop23K3,
    /// `M(j, p_j) - M(j + 2, p_{j+2}) > 0` for `m >= 3`.
    Lemma24Delta,
    /// `M(j - m - 3, p_j) - M(j - m - 1, p_{j+2}) > 0` for `m >= 3`.
    Lemma24Gamma,
    /// Every base lies in `[lower, upper]` of [`korselt_bounds`].
    Thm25Bounds,
    /// `M(-m - 2, p_1) > M(-m - 1, p_2)` for `m >= 3`.
    Thm25Theta,
    /// Some `M(j, p_j)` is a base iff `N = 2 p_2`.
    Thm27Attain,
    /// Divisor-pair solver agrees with the brute-force oracle.
    Prop21Oracle,
}

impl CheckId {
    pub const ALL: [CheckId; 9] = [
        CheckId::Prop23Pos,
        CheckId::Prop23Neg,
        CheckId::Prop23K3,
        CheckId::Lemma24Delta,
        CheckId::Lemma24Gamma,
        CheckId::Thm25Bounds,
        CheckId::Thm25Theta,
        CheckId::Thm27Attain,
        CheckId::Prop21Oracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Prop23Pos => "prop23_pos",
            CheckId::Prop23Neg => "prop23_neg",
            CheckId::Prop23K3 => "prop23_k3",
            CheckId::Lemma24Delta => "lemma24_delta",
            CheckId::Lemma24Gamma => "lemma24_gamma",
            CheckId::Thm25Bounds => "thm25_bounds",
            CheckId::Thm25Theta => "thm25_theta",
            CheckId::Thm27Attain => "thm27_attain",
            CheckId::Prop21Oracle => "prop21_oracle",
        }
    }

    /// Parses a comma-separated selection. Accepts `all` and the group
    /// prefixes `prop23`, `lemma24`, `thm25`, `thm27`, `prop21`.
    pub fn parse_list(spec: &str) -> std::result::Result<Vec<CheckId>, String> {
        let mut out = Vec::new();
        for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if token == "all" {
                out.extend(CheckId::ALL);
                continue;
            }
            let matched: Vec<CheckId> = CheckId::ALL
                .into_iter()
                .filter(|c| {
                    let name = c.as_str();
                    name == token || name.split('_').next() == Some(token)
                })
                .collect();
            if matched.is_empty() {
                return Err(format!("unknown check {token:?}"));
            }
            out.extend(matched);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

/// A reproducible counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: CheckId,
    pub n: u64,
    /// The relation that was expected to hold, e.g. `gamma_i <= M(j+r-i, p_j)`.
    pub relation: String,
    pub indices: BTreeMap<String, i64>,
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} N={}: {}", self.check, self.n, self.relation)?;
        for (name, value) in &self.indices {
            write!(f, " {name}={value}")?;
        }
        if let Some(lhs) = self.lhs {
            write!(f, " lhs={lhs}")?;
        }
        if let Some(rhs) = self.rhs {
            write!(f, " rhs={rhs}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// Nothing to check for this `N` (empty set, or `m` too small).
    Vacuous,
    Fail(Failure),
}

impl Outcome {
    fn failure(self) -> Option<Failure> {
        match self {
            Outcome::Fail(failure) => Some(failure),
            _ => None,
        }
    }
}

struct Witness {
    check: CheckId,
    n: u64,
}

impl Witness {
    fn fail(
        &self,
        relation: &str,
        indices: &[(&str, i64)],
        lhs: Option<Rational>,
        rhs: Option<Rational>,
    ) -> Outcome {
        Outcome::Fail(Failure {
            check: self.check,
            n: self.n,
            relation: relation.to_string(),
            indices: indices.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            lhs,
            rhs,
        })
    }
}

fn int(n: u64) -> Rational {
    Rational::from_integer(n as i64)
}

fn prop23_pos(w: &Witness, f: &SquarefreeFactorization, ks: &KorseltSet) -> Result<Outcome> {
    let gammas = ks.positives();
    let r = gammas.len();
    let Some(&gamma_r) = gammas.last() else {
        return Ok(Outcome::Vacuous);
    };
    if gamma_r > int(f.n() - 1) {
        return Ok(w.fail(
            "gamma_r <= N - 1",
            &[("r", r as i64)],
            Some(gamma_r),
            Some(int(f.n() - 1)),
        ));
    }
    for (i, &gamma) in (1..).zip(gammas) {
        for j in 1..=f.m() {
            let k = (j + r - i) as i64;
            let bound = m_value(f.n(), k, f.p(j))?;
            if gamma > bound {
                return Ok(w.fail(
                    "gamma_i <= M(j+r-i, p_j)",
                    &[("i", i as i64), ("j", j as i64), ("r", r as i64)],
                    Some(gamma),
                    Some(bound),
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn prop23_neg(w: &Witness, f: &SquarefreeFactorization, ks: &KorseltSet) -> Result<Outcome> {
    let betas = ks.negatives();
    if betas.is_empty() {
        return Ok(Outcome::Vacuous);
    }
    let m = f.m() as i64;
    for (s, &beta) in (1i64..).zip(betas) {
        for j in 1..=f.m() {
            let bound = m_value(f.n(), j as i64 - m - s - 2, f.p(j))?;
            if bound > beta {
                return Ok(w.fail(
                    "M(j-m-s-2, p_j) <= beta_s",
                    &[("s", s), ("j", j as i64)],
                    Some(bound),
                    Some(beta),
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn prop23_k3(w: &Witness, f: &SquarefreeFactorization, ks: &KorseltSet) -> Result<Outcome> {
    let Some(&beta) = ks.negatives().first() else {
        return Ok(Outcome::Vacuous);
    };
    let (a1, a2) = (beta.num() as i128, beta.den() as i128);
    let pm = f.p(f.m()) as i128;
    // (N - beta) / (p_m - beta) = (a2 N - a1) / (a2 p_m - a1)
    let k = reduce(a2 * f.n() as i128 - a1, a2 * pm - a1)?;
    if !k.is_integer() || k < Rational::from_integer(3) {
        return Ok(w.fail(
            "(N - beta_1)/(p_m - beta_1) is an integer >= 3",
            &[("s", 1), ("j", f.m() as i64)],
            Some(k),
            Some(Rational::from_integer(3)),
        ));
    }
    Ok(Outcome::Pass)
}

fn lemma24_delta(w: &Witness, f: &SquarefreeFactorization) -> Result<Outcome> {
    if f.m() < 3 {
        return Ok(Outcome::Vacuous);
    }
    for j in 1..=f.m() - 2 {
        let delta = m_value(f.n(), j as i64, f.p(j))?
            .checked_sub(m_value(f.n(), j as i64 + 2, f.p(j + 2))?)?;
        if !delta.is_positive() {
            return Ok(w.fail(
                "Delta_j = M(j, p_j) - M(j+2, p_{j+2}) > 0",
                &[("j", j as i64)],
                Some(delta),
                Some(Rational::ZERO),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn lemma24_gamma(w: &Witness, f: &SquarefreeFactorization) -> Result<Outcome> {
    if f.m() < 3 {
        return Ok(Outcome::Vacuous);
    }
    let m = f.m() as i64;
    for j in 1..=f.m() - 2 {
        let jj = j as i64;
        let gamma = m_value(f.n(), jj - m - 3, f.p(j))?
            .checked_sub(m_value(f.n(), jj - m - 1, f.p(j + 2))?)?;
        if !gamma.is_positive() {
            return Ok(w.fail(
                "Gamma_j = M(j-m-3, p_j) - M(j-m-1, p_{j+2}) > 0",
                &[("j", jj)],
                Some(gamma),
                Some(Rational::ZERO),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn thm25_bounds(w: &Witness, f: &SquarefreeFactorization, ks: &KorseltSet) -> Result<Outcome> {
    if ks.bases().is_empty() {
        return Ok(Outcome::Vacuous);
    }
    let bounds = korselt_bounds(f)?;
    for (idx, &alpha) in (1i64..).zip(ks.bases()) {
        if alpha < bounds.lower {
            return Ok(w.fail(
                "M(-m-2, p_1) <= alpha",
                &[("index", idx)],
                Some(bounds.lower),
                Some(alpha),
            ));
        }
        if alpha > bounds.upper {
            return Ok(w.fail(
                "alpha <= min(M(m-1, p_{m-1}), M(m, p_m))",
                &[("index", idx)],
                Some(alpha),
                Some(bounds.upper),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn thm25_theta(w: &Witness, f: &SquarefreeFactorization) -> Result<Outcome> {
    // The comparison only holds from m = 3 on; at m = 2 it can fail (N = 10).
    if f.m() < 3 {
        return Ok(Outcome::Vacuous);
    }
    let m = f.m() as i64;
    let theta = m_value(f.n(), -m - 2, f.p(1))?.checked_sub(m_value(f.n(), -m - 1, f.p(2))?)?;
    if !theta.is_positive() {
        return Ok(w.fail(
            "Theta = M(-m-2, p_1) - M(-m-1, p_2) > 0",
            &[("m", m)],
            Some(theta),
            Some(Rational::ZERO),
        ));
    }
    Ok(Outcome::Pass)
}

fn thm27_attain(w: &Witness, f: &SquarefreeFactorization, ks: &KorseltSet) -> Result<Outcome> {
    let attained = upper_attainment(f, ks)?;
    let twice_prime = f.m() == 2 && f.p(1) == 2;
    if attained.is_some() == twice_prime {
        return Ok(Outcome::Pass);
    }
    Ok(match attained {
        Some(j) => w.fail(
            "M(j, p_j) in KS(N) only if N = 2 p_2",
            &[("j", j as i64)],
            Some(m_value(f.n(), j as i64, f.p(j))?),
            None,
        ),
        None => w.fail(
            "N = 2 p_2 implies M(1, p_1) in KS(N)",
            &[("j", 1)],
            Some(m_value(f.n(), 1, f.p(1))?),
            None,
        ),
    })
}

fn prop21_oracle(w: &Witness, f: &SquarefreeFactorization, ks: &KorseltSet) -> Result<Outcome> {
    let oracle = oracle_q_korselt_set(f)?;
    if oracle.bases() == ks.bases() {
        return Ok(Outcome::Pass);
    }
    let extra = ks.bases().iter().find(|a| !oracle.contains(a)).copied();
    let missing = oracle.bases().iter().find(|a| !ks.contains(a)).copied();
    Ok(w.fail(
        "solver set = oracle set (lhs: solver only, rhs: oracle only)",
        &[
            ("solver_weight", ks.weight() as i64),
            ("oracle_weight", oracle.weight() as i64),
        ],
        extra,
        missing,
    ))
}

/// Runs one check on `N` with its (claimed) rational Korselt set `ks`.
pub fn evaluate(check: CheckId, f: &SquarefreeFactorization, ks: &KorseltSet) -> Result<Outcome> {
    let w = Witness { check, n: f.n() };
    match check {
        CheckId::Prop23Pos => prop23_pos(&w, f, ks),
        CheckId::Prop23Neg => prop23_neg(&w, f, ks),
        CheckId::Prop23K3 => prop23_k3(&w, f, ks),
        CheckId::Lemma24Delta => lemma24_delta(&w, f),
        CheckId::Lemma24Gamma => lemma24_gamma(&w, f),
        CheckId::Thm25Bounds => thm25_bounds(&w, f, ks),
        CheckId::Thm25Theta => thm25_theta(&w, f),
        CheckId::Thm27Attain => thm27_attain(&w, f, ks),
        CheckId::Prop21Oracle => prop21_oracle(&w, f, ks),
    }
}

fn first_failure(
    checks: &[CheckId],
    f: &SquarefreeFactorization,
    ks: &KorseltSet,
) -> Result<Option<Failure>> {
    for &check in checks {
        if let Some(failure) = evaluate(check, f, ks)?.failure() {
            return Ok(Some(failure));
        }
    }
    Ok(None)
}

pub fn check_prop23_pos(f: &SquarefreeFactorization, ks: &KorseltSet) -> Result<Option<Failure>> {
    first_failure(&[CheckId::Prop23Pos], f, ks)
}

/// Negative-base bounds, then the `k_(1,m) >= 3` claim.
pub fn check_prop23_neg(f: &SquarefreeFactorization, ks: &KorseltSet) -> Result<Option<Failure>> {
    first_failure(&[CheckId::Prop23Neg, CheckId::Prop23K3], f, ks)
}

pub fn check_lemma24(f: &SquarefreeFactorization) -> Result<Option<Failure>> {
    let empty = KorseltSet::new(f.n(), Vec::new())?;
    first_failure(&[CheckId::Lemma24Delta, CheckId::Lemma24Gamma], f, &empty)
}

/// Bound containment, then (for `m >= 3`) the Theta comparison.
pub fn check_thm25(f: &SquarefreeFactorization, ks: &KorseltSet) -> Result<Option<Failure>> {
    first_failure(&[CheckId::Thm25Bounds, CheckId::Thm25Theta], f, ks)
}

pub fn check_thm27(f: &SquarefreeFactorization, ks: &KorseltSet) -> Result<Option<Failure>> {
    first_failure(&[CheckId::Thm27Attain], f, ks)
}

pub fn check_prop21_oracle(
    f: &SquarefreeFactorization,
    ks: &KorseltSet,
) -> Result<Option<Failure>> {
    first_failure(&[CheckId::Prop21Oracle], f, ks)
}

/// Aggregated result of one check over a range of `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub check_id: CheckId,
    pub range: [u64; 2],
    /// Squarefree composites the check was applied to, vacuous ones included.
    pub tested_count: usize,
    pub vacuous_count: usize,
    /// Ascending by `N`.
    pub failures: Vec<Failure>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Applies each selected check to every squarefree composite in `[lo, hi]`.
///
/// Reports come back ordered by check id, failures within a report by `N`.
pub fn run_suite(lo: u64, hi: u64, checks: &[CheckId], jobs: Jobs) -> Result<Vec<TheoremReport>> {
    let mut checks = checks.to_vec();
    checks.sort_unstable();
    checks.dedup();

    let mut reports: Vec<TheoremReport> = checks
        .iter()
        .map(|&check_id| TheoremReport {
            check_id,
            range: [lo, hi],
            tested_count: 0,
            vacuous_count: 0,
            failures: Vec::new(),
        })
        .collect();
    if lo > hi {
        return Ok(reports);
    }
    if lo < 6 {
        return Err(Error::OutOfDomain(lo, "verification ranges start at 6"));
    }

    let per_n = try_filter_map_range(lo, hi, jobs, |n| {
        let Ok(f) = factor_squarefree(n) else {
            return Ok(None);
        };
        let ks = q_korselt_set(&f)?;
        checks
            .iter()
            .map(|&check| evaluate(check, &f, &ks))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    })?;

    for outcomes in per_n {
        for (report, outcome) in reports.iter_mut().zip(outcomes) {
            report.tested_count += 1;
            match outcome {
                Outcome::Pass => {}
                Outcome::Vacuous => report.vacuous_count += 1,
                Outcome::Fail(failure) => report.failures.push(failure),
            }
        }
    }
    Ok(reports)
}
