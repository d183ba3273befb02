use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use korselt_cli::ScanRecord;

fn korselt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_korselt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = korselt(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

fn members(line: &str) -> Vec<u64> {
    line.trim()
        .split(", ")
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().unwrap())
        .collect()
}

#[test]
fn set_command() {
    assert_eq!(ok(&["set", "14", "--domain", "q"]), "7/2, 6, 8\n");
    assert_eq!(
        ok(&["set", "66", "--domain", "q", "--include-trivial"]),
        "11/6, 22/7, 6, 10, 66\n"
    );
    assert_eq!(ok(&["set", "15", "--domain", "z"]), "4, 6, 7\n");
}

#[test]
fn domain_errors_exit_with_two() {
    let out = korselt(&["set", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not squarefree"));
    assert_eq!(korselt(&["set", "13"]).status.code(), Some(2));
    assert_eq!(korselt(&["bounds", "49"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(korselt(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(korselt(&["set"]).status.code(), Some(1));
    assert_eq!(korselt(&["set", "10", "--domain", "r"]).status.code(), Some(1));
    assert_eq!(korselt(&["base", "x/y", "--max", "10"]).status.code(), Some(1));
    assert_eq!(
        korselt(&["verify", "--range", "6", "10", "--checks", "bogus"]).status.code(),
        Some(1)
    );
    assert_eq!(korselt(&["--help"]).status.code(), Some(0));
}

#[test]
fn weight_command() {
    let out = ok(&["weight", "5183", "--domain", "q"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("285"));
    assert_eq!(lines.next(), Some("# +1 with --include-trivial"));
    assert!(ok(&["weight", "5183", "--domain", "q", "--include-trivial"]).starts_with("286\n"));
    assert!(ok(&["weight", "5183", "--domain", "z"]).starts_with("9\n"));
    assert!(ok(&["weight", "22", "--domain", "z"]).starts_with("1\n"));
    assert_eq!(
        ok(&["weight", "--range", "6", "20", "--domain", "q"]),
        "6\t9\n10\t5\n14\t3\n15\t13\n"
    );
    assert_eq!(
        ok(&["weight", "--range", "6", "20", "--format", "csv"]),
        "n,weight\n6,9\n10,5\n14,3\n15,13\n"
    );
}

#[test]
fn base_command() {
    assert!(members(&ok(&["base", "12", "--max", "30"])).contains(&22));
    assert!(members(&ok(&["base", "1", "--max", "600"])).contains(&561));
    let six = members(&ok(&["base", "6", "--max", "70"]));
    for n in [10, 14, 15, 30, 42, 66, 70] {
        assert!(six.contains(&n), "{n}");
    }
    let out = korselt(&["base", "0", "--max", "100"]);
    assert_eq!(out.status.code(), Some(2));
    // Negative and fractional bases parse.
    ok(&["base", "-5/2", "--max", "100"]);
    let json = ok(&["base", "5/2", "--max", "100", "--format", "json"]);
    assert!(json.contains(r#""alpha":{"num":5,"den":2}"#), "{json}");
}

#[test]
fn carmichael_command() {
    assert_eq!(ok(&["carmichael", "--max", "600"]), "561\n");
    assert_eq!(ok(&["carmichael", "--max", "2000"]), "561, 1105, 1729\n");
    assert_eq!(ok(&["carmichael", "--max", "2"]), "\n");
    assert_eq!(ok(&["carmichael", "--max", "2000", "--format", "json"]), "[561,1105,1729]\n");
}

#[test]
fn bounds_command() {
    let text = ok(&["bounds", "15"]);
    assert!(text.contains("upper = M(2, 5) = 25/3"), "{text}");
    let text = ok(&["bounds", "10"]);
    assert!(text.contains("upper = M(1, 2) = 6"), "{text}");
    assert!(text.contains("lower = M(-4, 2) = -2/3"), "{text}");
    let csv = ok(&["bounds", "6", "--format", "csv"]);
    assert_eq!(csv, "n,lower,upper,upper_argmin\n6,2/3,4/1,tie\n");
}

#[test]
fn machine_formats_carry_exact_rationals() {
    let json = ok(&["set", "14", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["weight"], 3);
    assert_eq!(doc["bases"][0], serde_json::json!({"num": 7, "den": 2}));
    assert_eq!(ok(&["set", "14", "--format", "csv"]), "n,base\n14,7/2\n14,6/1\n14,8/1\n");
}

#[test]
fn verify_command() {
    let out = ok(&["verify", "--range", "6", "1000", "--checks", "thm27"]);
    assert!(out.contains("thm27_attain") && out.contains("PASS"), "{out}");
    ok(&["verify", "--range", "6", "6", "--checks", "all"]);
    let json = ok(&["verify", "--range", "6", "100", "--checks", "thm25", "--format", "json"]);
    let reports: Vec<korselt::TheoremReport> = serde_json::from_str(&json).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r.passed()));
    assert_eq!(korselt(&["verify", "--range", "2", "10"]).status.code(), Some(2));
}

fn squarefree_composite_count(lo: u64, hi: u64) -> usize {
    (lo..=hi)
        .filter(|&n| {
            let (mut rest, mut primes, mut d) = (n, 0, 2);
            while d * d <= rest {
                if rest % d == 0 {
                    rest /= d;
                    if rest % d == 0 {
                        return false;
                    }
                    primes += 1;
                }
                d += 1;
            }
            primes + usize::from(rest > 1) >= 2
        })
        .count()
}

fn read_records(path: &Path) -> Vec<ScanRecord> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn scan_writes_sorted_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let out_s = out.to_str().unwrap();
    ok(&["scan", "--range", "6", "100", "--out", out_s]);
    let first = fs::read(&out).unwrap();
    let records = read_records(&out);
    assert_eq!(records.len(), squarefree_composite_count(6, 100));
    assert!(records.windows(2).all(|w| w[0].n < w[1].n));
    assert!(first.ends_with(b"\n") && !first.contains(&b'\r'));

    ok(&["scan", "--range", "6", "100", "--out", out_s]);
    assert_eq!(fs::read(&out).unwrap(), first);

    let single = ok(&["scan", "--range", "10", "10"]);
    let record: ScanRecord = serde_json::from_str(single.trim()).unwrap();
    assert_eq!(record.n, 10);
    assert_eq!(record.weight_q, 5);
    assert_eq!(single.lines().count(), 1);
}

#[test]
fn scan_resumes_from_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cold = dir.path().join("cold.jsonl");
    let warm = dir.path().join("warm.jsonl");
    let cache_s = cache.to_str().unwrap();

    ok(&["scan", "--range", "6", "60", "--cache", cache_s, "--out", dir.path().join("part.jsonl").to_str().unwrap()]);
    assert_eq!(read_records(&cache).len(), squarefree_composite_count(6, 60));

    ok(&["scan", "--range", "6", "150", "--cache", cache_s, "--out", warm.to_str().unwrap()]);
    ok(&["scan", "--range", "6", "150", "--out", cold.to_str().unwrap()]);
    assert_eq!(fs::read(&warm).unwrap(), fs::read(&cold).unwrap());
    assert_eq!(read_records(&cache).len(), squarefree_composite_count(6, 150));

    // Cached answers are served to other commands.
    assert_eq!(ok(&["set", "14", "--cache", cache_s]), "7/2, 6, 8\n");
}

#[test]
fn corrupt_cache_fails_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    ok(&["scan", "--range", "6", "30", "--cache", cache.to_str().unwrap(), "--out", dir.path().join("o").to_str().unwrap()]);
    let mut text = fs::read_to_string(&cache).unwrap();
    text.push_str("{not json\n");
    let bad_line = text.lines().count();
    fs::write(&cache, text).unwrap();

    let out = korselt(&["scan", "--range", "6", "40", "--cache", cache.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains(&format!(":{bad_line}:")), "{}", stderr(&out));
}

#[test]
fn unwritable_output_is_reported() {
    let out = korselt(&["scan", "--range", "6", "20", "--out", "/nonexistent-dir/r.jsonl"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("/nonexistent-dir/r.jsonl"));
}

#[test]
fn exit_codes_by_error_class() {
    use korselt_cli::error::CliError;
    assert_eq!(CliError::VerificationFailed { failures: 1 }.exit_code(), 3);
    assert_eq!(CliError::Domain(korselt::Error::ZeroBase).exit_code(), 2);
    assert_eq!(CliError::Domain(korselt::Error::Parse("x".into())).exit_code(), 1);
    assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
}
