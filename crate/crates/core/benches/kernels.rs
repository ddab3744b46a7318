use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use prudent_core::lattice::enumerate_counts_with;
use prudent_core::sampler::{ExtTable, DEFAULT_BUDGET_BYTES};
use prudent_core::{Execution, WalkClass};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn brute_force(c: &mut Criterion) {
    let mut g = c.benchmark_group("brute_force");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "three-sided n=12"), &exec, |b, &exec| {
            b.iter(|| enumerate_counts_with(black_box(WalkClass::ThreeSided), 12, exec))
        });
        g.bench_with_input(BenchmarkId::new(name, "triangular n=9"), &exec, |b, &exec| {
            b.iter(|| enumerate_counts_with(black_box(WalkClass::Triangular), 9, exec))
        });
    }
    g.finish();
}

fn ext_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("ext_table_build");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "three-sided n=80"), &exec, |b, &exec| {
            b.iter(|| ExtTable::build_with(black_box(WalkClass::ThreeSided), 80, exec, DEFAULT_BUDGET_BYTES).unwrap())
        });
    }
    g.finish();
}

fn sampling(c: &mut Criterion) {
    let table = ExtTable::build(WalkClass::TwoSided, 200).unwrap();
    let mut g = c.benchmark_group("uniform_samples");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "two-sided n=200 x1000"), &exec, |b, &exec| {
            b.iter(|| table.samples(1000, black_box(7), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, brute_force, ext_table, sampling);
criterion_main!(benches);
