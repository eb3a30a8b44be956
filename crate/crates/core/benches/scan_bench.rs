//! Parallel vs sequential comparison for the two scan-shaped workloads: the
//! junction-pair counting scan and full enumeration by descendant expansion.
//!
//! Run with `cargo bench -p arith-dpath`; with `--no-default-features` the
//! "parallel" entries degrade to the sequential path, which makes the
//! comparison itself the point.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use arith_dpath::enumeration::{
    enumerate_all, enumerate_all_seq, scan_shape_counts, scan_shape_counts_seq,
};

fn bench_shape_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("shape_counts");
    for bound in [512u64, 2048] {
        group.bench_with_input(BenchmarkId::new("seq", bound), &bound, |b, &bound| {
            b.iter(|| scan_shape_counts_seq(bound, bound, 6, 6).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("par", bound), &bound, |b, &bound| {
            b.iter(|| scan_shape_counts(bound, bound, 6, 6).unwrap())
        });
    }
    group.finish();
}

fn bench_enumerate_all(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_all");
    group.sample_size(20);
    for (m, n) in [(2u32, 5u32), (3, 4)] {
        let id = format!("{m}x{n}");
        group.bench_with_input(BenchmarkId::new("seq", &id), &(m, n), |b, &(m, n)| {
            b.iter(|| enumerate_all_seq(m, n).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("par", &id), &(m, n), |b, &(m, n)| {
            b.iter(|| enumerate_all(m, n).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_shape_counts, bench_enumerate_all);
criterion_main!(benches);
