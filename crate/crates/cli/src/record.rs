use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::Instant;

use korselt::{
    factor_squarefree, korselt_bounds, q_korselt_set, upper_attainment, Rational,
    SquarefreeFactorization,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// One `N`'s full result row, as stored in scan output and caches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: u64,
    pub primes: Vec<u64>,
    pub weight_q: usize,
    pub weight_z: usize,
    pub bases: Vec<Rational>,
    pub lower: Rational,
    pub upper: Rational,
    pub attained_j: Option<usize>,
    /// Zero unless timings were requested, so that output stays reproducible.
    pub elapsed_us: u64,
}

impl ScanRecord {
    pub fn compute(f: &SquarefreeFactorization, timed: bool) -> Result<Self, korselt::Error> {
        let start = Instant::now();
        let ks = q_korselt_set(f)?;
        let bounds = korselt_bounds(f)?;
        let attained_j = upper_attainment(f, &ks)?;
        let elapsed_us = if timed {
            start.elapsed().as_micros() as u64
        } else {
            0
        };
        Ok(ScanRecord {
            n: f.n(),
            primes: f.primes().to_vec(),
            weight_q: ks.weight(),
            weight_z: ks.integers().weight(),
            bases: ks.bases().to_vec(),
            lower: bounds.lower,
            upper: bounds.upper,
            attained_j,
            elapsed_us,
        })
    }

    /// Record for `n`, or `None` when `n` is not squarefree composite.
    pub fn for_n(n: u64, timed: bool) -> Result<Option<Self>, korselt::Error> {
        match factor_squarefree(n) {
            Ok(f) => Self::compute(&f, timed).map(Some),
            Err(_) => Ok(None),
        }
    }

    pub fn integer_bases(&self) -> Vec<Rational> {
        self.bases.iter().copied().filter(Rational::is_integer).collect()
    }
}

pub fn write_jsonl<W: Write>(mut out: W, records: &[ScanRecord]) -> Result<(), CliError> {
    for record in records {
        serde_json::to_writer(&mut out, record)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Previously computed records keyed by `n`.
#[derive(Debug, Default, Clone)]
pub struct Cache {
    records: BTreeMap<u64, ScanRecord>,
}

impl Cache {
    /// Loads a JSONL cache. A missing file is an empty cache; any unparsable
    /// line fails with its one-based line number.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let file = match File::open(path) {
            Ok(file) => file,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Cache::default()),
            Err(e) => return Err(CliError::io(path, e)),
        };
        let mut records = BTreeMap::new();
        for (idx, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| CliError::io(path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let corrupt = |message: String| CliError::CorruptCache {
                path: path.to_path_buf(),
                line: idx + 1,
                message,
            };
            let record: ScanRecord =
                serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
            if record.primes.iter().product::<u64>() != record.n {
                return Err(corrupt(format!("primes do not multiply to {}", record.n)));
            }
            records.insert(record.n, record);
        }
        Ok(Cache { records })
    }

    pub fn get(&self, n: u64) -> Option<&ScanRecord> {
        self.records.get(&n)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = ScanRecord>) {
        for record in records {
            self.records.insert(record.n, record);
        }
    }

    pub fn records(&self) -> impl Iterator<Item = &ScanRecord> {
        self.records.values()
    }
}
