use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use detlab_bench::{dense, moore, one_letter};
use detlab_core::analysis::{index_period, predict_bounds};
use detlab_core::determinize::{determinize, Fuel};
use detlab_core::monoid::monoid_closure;

fn bench_determinize(c: &mut Criterion) {
    let mut group = c.benchmark_group("determinize");
    for n in [8usize, 10, 12] {
        let a = moore(n);
        group.bench_with_input(BenchmarkId::new("moore", n), &a, |b, a| {
            b.iter(|| determinize(black_box(a), Fuel::unbounded()))
        });
    }
    let d = dense(10);
    group.bench_function("dense-10", |b| {
        b.iter(|| determinize(black_box(&d), Fuel::unbounded()))
    });
    group.finish();
}

fn bench_monoid_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("monoid_closure");
    for n in [3usize, 4] {
        let a = moore(n);
        let mats = a.transition_matrices();
        group.bench_with_input(BenchmarkId::new("moore", n), &mats, |b, mats| {
            b.iter(|| monoid_closure(black_box(mats), 1 << 22))
        });
    }
    group.finish();
}

fn bench_analysis(c: &mut Criterion) {
    let mut group = c.benchmark_group("analysis");
    let a = one_letter(30);
    let m = a.transition_matrices().remove(0);
    group.bench_function("index_period-30", |b| {
        b.iter(|| index_period(black_box(&m)))
    });
    let d = dense(10);
    group.bench_function("predict_bounds-dense-10", |b| {
        b.iter(|| predict_bounds(black_box(&d)))
    });
    group.finish();
}

criterion_group!(benches, bench_determinize, bench_monoid_closure, bench_analysis);
criterion_main!(benches);
