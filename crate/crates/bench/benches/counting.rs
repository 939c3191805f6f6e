use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigUint;

use sobwidth_core::lattice::count_lattice;
use sobwidth_core::limitspace::{limit_approx_number, limit_count};
use sobwidth_core::tractability::info_complexity;
use sobwidth_core::{SmoothnessProfile, Spectrum};

fn profile(s: &str) -> SmoothnessProfile {
    s.parse().expect("valid profile")
}

fn counting(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_lattice");
    for (name, t) in [("1,2", 1e6), ("1^4", 1e4), ("0.5,1.5,2.5", 1e3)] {
        let p = profile(name);
        g.bench_with_input(BenchmarkId::new(name, t), &t, |b, &t| {
            b.iter(|| count_lattice(&p, black_box(t), false).expect("count"))
        });
    }
    g.finish();
}

fn approx_numbers(c: &mut Criterion) {
    let mut g = c.benchmark_group("approx_number");
    for (name, n) in [("1,2", 1_000_000u64), ("1^3", 100_000), ("0.7,1.3", 1_000_000)] {
        let sp = Spectrum::new(&profile(name));
        g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
            b.iter(|| sp.approx_number(black_box(n)).expect("a_n"))
        });
    }
    g.finish();
}

fn limit_space(c: &mut Criterion) {
    let mut g = c.benchmark_group("limit");
    g.bench_function("count d=200 m=100", |b| b.iter(|| limit_count(black_box(200), 100).expect("count")));
    let n = BigUint::from(10u8).pow(40);
    g.bench_function("a_n d=100 n=1e40", |b| {
        b.iter(|| limit_approx_number(black_box(100), &n).expect("a_n"))
    });
    g.finish();
}

fn complexity(c: &mut Criterion) {
    let p = profile("1,2");
    c.bench_function("info_complexity R=1,2 eps=1e-3", |b| {
        b.iter(|| info_complexity(&p, black_box(1e-3)).expect("n_eps"))
    });
}

criterion_group!(benches, counting, approx_numbers, limit_space, complexity);
criterion_main!(benches);
