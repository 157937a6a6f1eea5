use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use lagrange_core::momentmap::profile;
use lagrange_core::potential::{scan_conjecture, ParamRange, ScanGrid};
use lagrange_core::{Component, Executor, MassParams};

fn executors() -> [(&'static str, Executor); 2] {
    [("sequential", Executor::sequential()), ("parallel", Executor::new(0))]
}

fn bench_scan(c: &mut Criterion) {
    let grid = ScanGrid {
        m1: ParamRange { lo: 0.5, hi: 5.0, n: 12 },
        m2: ParamRange { lo: 0.0, hi: 5.0, n: 12 },
        eps: ParamRange { lo: 0.25, hi: 4.0, n: 6 },
    };
    let mut g = c.benchmark_group("scan");
    for (name, exec) in executors() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, e| {
            b.iter(|| scan_conjecture(&grid, e))
        });
    }
    g.finish();
}

fn bench_profile(c: &mut Criterion) {
    let par = MassParams::new(1.0, 0.5, 0.4).unwrap();
    let mut g = c.benchmark_group("profile");
    g.sample_size(20);
    for (name, exec) in executors() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, e| {
            b.iter(|| profile(-3.0, &par, Component::E, 64, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_scan, bench_profile);
criterion_main!(benches);
