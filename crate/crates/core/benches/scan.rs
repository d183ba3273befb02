use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use korselt::par::try_filter_map_range;
use korselt::{
    carmichael_scan, factor_squarefree, oracle_q_korselt_set, q_korselt_set, run_suite, CheckId,
    Jobs,
};

fn modes() -> [(&'static str, Jobs); 2] {
    [("sequential", Jobs::SEQUENTIAL), ("parallel", Jobs::available())]
}

fn range_sets(c: &mut Criterion) {
    let mut group = c.benchmark_group("q_korselt_set_range");
    for hi in [2_000u64, 20_000] {
        for (label, jobs) in modes() {
            group.bench_with_input(BenchmarkId::new(label, hi), &hi, |b, &hi| {
                b.iter(|| {
                    try_filter_map_range(6, hi, jobs, |n| match factor_squarefree(n) {
                        Ok(f) => q_korselt_set(&f).map(|ks| Some(ks.weight())),
                        Err(_) => Ok(None),
                    })
                    .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let checks: Vec<CheckId> = CheckId::ALL
        .into_iter()
        .filter(|&c| c != CheckId::Prop21Oracle)
        .collect();
    let mut group = c.benchmark_group("run_suite_6_10000");
    group.sample_size(10);
    for (label, jobs) in modes() {
        group.bench_function(label, |b| b.iter(|| run_suite(6, 10_000, &checks, jobs).unwrap()));
    }
    group.finish();
}

fn carmichael(c: &mut Criterion) {
    let mut group = c.benchmark_group("carmichael_scan_100000");
    group.sample_size(10);
    for (label, jobs) in modes() {
        group.bench_function(label, |b| b.iter(|| carmichael_scan(black_box(100_000), jobs)));
    }
    group.finish();
}

fn solver_vs_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("single_n_210");
    let f = factor_squarefree(210).unwrap();
    group.bench_function("divisor_pairs", |b| b.iter(|| q_korselt_set(black_box(&f)).unwrap()));
    group.sample_size(10);
    group.bench_function("oracle", |b| b.iter(|| oracle_q_korselt_set(black_box(&f)).unwrap()));
    group.finish();
}

criterion_group!(benches, range_sets, suite, carmichael, solver_vs_oracle);
criterion_main!(benches);
