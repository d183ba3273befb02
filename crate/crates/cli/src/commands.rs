use std::io::{BufWriter, Write};
use std::path::Path;

use korselt::par::try_filter_map_range;
use korselt::{
    base_set, carmichael_scan, factor_squarefree, korselt_bounds, korselt_set, m_value,
    run_suite, CheckId, Domain, Jobs, Rational, UpperArgmin,
};
use serde_json::json;
use tempfile::NamedTempFile;

use crate::args::Format;
use crate::error::CliError;
use crate::record::{write_jsonl, Cache, ScanRecord};

pub struct Context<'a> {
    pub format: Format,
    pub jobs: Jobs,
    pub cache: Option<&'a Path>,
}

impl Context<'_> {
    fn load_cache(&self) -> Result<Cache, CliError> {
        match self.cache {
            Some(path) => Cache::load(path),
            None => Ok(Cache::default()),
        }
    }
}

fn join(values: impl IntoIterator<Item = impl ToString>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Exact `num/den` text used in machine formats.
fn wire(r: Rational) -> String {
    format!("{}/{}", r.num(), r.den())
}

fn range_arg(range: &[u64]) -> Result<(u64, u64), CliError> {
    match *range {
        [lo, hi] => Ok((lo, hi)),
        _ => Err(CliError::Usage("--range takes exactly two values".into())),
    }
}

/// Strict set of `n` over `domain`, from the cache when possible.
fn lookup_set(n: u64, domain: Domain, cache: &Cache) -> Result<Vec<Rational>, CliError> {
    let f = factor_squarefree(n)?;
    if let Some(record) = cache.get(n) {
        return Ok(match domain {
            Domain::Q => record.bases.clone(),
            Domain::Z => record.integer_bases(),
        });
    }
    Ok(korselt_set(&f, domain)?.bases().to_vec())
}

pub fn set(
    ctx: &Context,
    out: &mut dyn Write,
    n: u64,
    domain: Domain,
    include_trivial: bool,
) -> Result<(), CliError> {
    let strict = lookup_set(n, domain, &ctx.load_cache()?)?;
    let weight = strict.len();
    let mut shown = strict;
    if include_trivial {
        shown.push(Rational::from_integer(n as i64));
    }
    match ctx.format {
        Format::Text => writeln!(out, "{}", join(&shown))?,
        Format::Json => {
            let doc = json!({
                "n": n,
                "domain": domain,
                "weight": weight,
                "include_trivial": include_trivial,
                "bases": shown,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "base"])?;
            for alpha in shown {
                w.write_record([n.to_string(), wire(alpha)])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn weight(
    ctx: &Context,
    out: &mut dyn Write,
    n: Option<u64>,
    range: Option<&[u64]>,
    domain: Domain,
    include_trivial: bool,
) -> Result<(), CliError> {
    let cache = ctx.load_cache()?;
    let trivial = usize::from(include_trivial);

    if let Some(n) = n {
        let strict = lookup_set(n, domain, &cache)?.len();
        match ctx.format {
            Format::Text => {
                writeln!(out, "{}", strict + trivial)?;
                if include_trivial {
                    writeln!(out, "# includes the trivial base {n}; strict weight {strict}")?;
                } else {
                    writeln!(out, "# +1 with --include-trivial")?;
                }
            }
            Format::Json => {
                let doc = json!({
                    "n": n,
                    "domain": domain,
                    "weight": strict,
                    "weight_with_trivial": strict + 1,
                });
                writeln!(out, "{doc}")?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["n", "weight", "weight_with_trivial"])?;
                w.write_record([n.to_string(), strict.to_string(), (strict + 1).to_string()])?;
                w.flush()?;
            }
        }
        return Ok(());
    }

    let (lo, hi) = range_arg(range.unwrap_or_default())?;
    let rows: Vec<(u64, usize)> = try_filter_map_range(lo, hi, ctx.jobs, |n| {
        if factor_squarefree(n).is_err() {
            return Ok(None);
        }
        lookup_set(n, domain, &cache).map(|s| Some((n, s.len())))
    })?;
    match ctx.format {
        Format::Text => {
            for (n, w) in &rows {
                writeln!(out, "{n}\t{}", w + trivial)?;
            }
        }
        Format::Json => {
            let doc: Vec<_> = rows
                .iter()
                .map(|&(n, w)| json!({ "n": n, "domain": domain, "weight": w }))
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(doc))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "weight"])?;
            for (n, weight) in rows {
                w.write_record([n.to_string(), weight.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn base(ctx: &Context, out: &mut dyn Write, alpha: &str, max: u64) -> Result<(), CliError> {
    let alpha: Rational = alpha.parse()?;
    let record = base_set(alpha, max, ctx.jobs)?;
    match ctx.format {
        Format::Text => writeln!(out, "{}", join(&record.members))?,
        Format::Json => writeln!(out, "{}", serde_json::to_string(&record)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["alpha", "n"])?;
            for n in &record.members {
                w.write_record([wire(alpha), n.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn carmichael(ctx: &Context, out: &mut dyn Write, max: u64) -> Result<(), CliError> {
    let found = carmichael_scan(max, ctx.jobs);
    match ctx.format {
        Format::Text => writeln!(out, "{}", join(&found))?,
        Format::Json => writeln!(out, "{}", serde_json::to_string(&found)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n"])?;
            for n in found {
                w.write_record([n.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn bounds(ctx: &Context, out: &mut dyn Write, n: u64) -> Result<(), CliError> {
    let f = factor_squarefree(n)?;
    let report = korselt_bounds(&f)?;
    let m = f.m();
    let penultimate = m_value(n, m as i64 - 1, f.p(m - 1))?;
    let last = m_value(n, m as i64, f.p(m))?;
    let argmin = match report.upper_argmin {
        UpperArgmin::Penultimate => format!("M({}, {})", m - 1, f.p(m - 1)),
        UpperArgmin::Last => format!("M({}, {})", m, f.p(m)),
        UpperArgmin::Tie => format!("M({}, {}) = M({}, {})", m - 1, f.p(m - 1), m, f.p(m)),
    };
    match ctx.format {
        Format::Text => {
            writeln!(out, "N = {n} = {}", join(f.primes()).replace(", ", "*"))?;
            writeln!(
                out,
                "lower = M({}, {}) = {} ({:.6})",
                -(m as i64) - 2,
                f.p(1),
                report.lower,
                report.lower.to_f64()
            )?;
            writeln!(
                out,
                "upper = {argmin} = {} ({:.6})",
                report.upper,
                report.upper.to_f64()
            )?;
            writeln!(
                out,
                "candidates: M({}, {}) = {penultimate}, M({}, {}) = {last}",
                m - 1,
                f.p(m - 1),
                m,
                f.p(m)
            )?;
        }
        Format::Json => {
            let doc = json!({
                "n": n,
                "primes": f.primes(),
                "lower": report.lower,
                "upper": report.upper,
                "upper_argmin": report.upper_argmin,
                "candidates": { "penultimate": penultimate, "last": last },
            });
            writeln!(out, "{doc}")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "lower", "upper", "upper_argmin"])?;
            let tag = serde_json::to_value(report.upper_argmin)?;
            w.write_record([
                n.to_string(),
                wire(report.lower),
                wire(report.upper),
                tag.as_str().unwrap_or_default().to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

/// Cap on failures listed per check in text output.
const TEXT_FAILURE_LIMIT: usize = 20;

pub fn verify(ctx: &Context, out: &mut dyn Write, range: &[u64], checks: &str) -> Result<(), CliError> {
    let (lo, hi) = range_arg(range)?;
    let checks = CheckId::parse_list(checks).map_err(CliError::Usage)?;
    let reports = run_suite(lo, hi, &checks, ctx.jobs)?;
    match ctx.format {
        Format::Text => {
            for r in &reports {
                writeln!(
                    out,
                    "{:<14} [{}, {}] tested={} vacuous={} failures={} {}",
                    r.check_id,
                    r.range[0],
                    r.range[1],
                    r.tested_count,
                    r.vacuous_count,
                    r.failures.len(),
                    if r.passed() { "PASS" } else { "FAIL" }
                )?;
                for failure in r.failures.iter().take(TEXT_FAILURE_LIMIT) {
                    writeln!(out, "  {failure}")?;
                }
                if r.failures.len() > TEXT_FAILURE_LIMIT {
                    writeln!(out, "  ... {} more", r.failures.len() - TEXT_FAILURE_LIMIT)?;
                }
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string(&reports)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["check_id", "n_lo", "n_hi", "tested", "vacuous", "failures"])?;
            for r in &reports {
                w.write_record([
                    r.check_id.to_string(),
                    r.range[0].to_string(),
                    r.range[1].to_string(),
                    r.tested_count.to_string(),
                    r.vacuous_count.to_string(),
                    r.failures.len().to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
    if failures > 0 {
        return Err(CliError::VerificationFailed { failures });
    }
    Ok(())
}

/// Writes `records` as JSONL to `path` through a temporary file in the same
/// directory, renamed into place once complete.
fn write_atomically(path: &Path, records: &[ScanRecord]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => dir,
        _ => Path::new("."),
    };
    let tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    write_jsonl(BufWriter::new(tmp.as_file()), records).map_err(|e| match e {
        CliError::Output(io) => CliError::io(path, io),
        other => other,
    })?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub fn scan(
    ctx: &Context,
    out: &mut dyn Write,
    range: &[u64],
    out_path: Option<&Path>,
    timings: bool,
) -> Result<(), CliError> {
    let (lo, hi) = range_arg(range)?;
    let mut cache = ctx.load_cache()?;

    let records: Vec<(ScanRecord, bool)> = try_filter_map_range(lo, hi, ctx.jobs, |n| {
        let Ok(f) = factor_squarefree(n) else {
            return Ok(None);
        };
        if let Some(hit) = cache.get(n) {
            if hit.primes != f.primes() {
                return Err(CliError::Usage(format!(
                    "cache record for {n} lists primes {:?}, expected {:?}",
                    hit.primes,
                    f.primes()
                )));
            }
            return Ok(Some((hit.clone(), false)));
        }
        Ok(Some((ScanRecord::compute(&f, timings)?, true)))
    })?;

    let fresh: Vec<ScanRecord> = records.iter().filter(|r| r.1).map(|r| r.0.clone()).collect();
    let records: Vec<ScanRecord> = records.into_iter().map(|r| r.0).collect();

    match out_path {
        Some(path) => write_atomically(path, &records)?,
        None => write_jsonl(&mut *out, &records)?,
    }

    if let Some(cache_path) = ctx.cache {
        if !fresh.is_empty() || !cache_path.exists() {
            cache.extend(fresh);
            let all: Vec<ScanRecord> = cache.records().cloned().collect();
            write_atomically(cache_path, &all)?;
        }
    }
    Ok(())
}
