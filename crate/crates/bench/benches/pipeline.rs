use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mzv_bench::{product_pair, whole_table, NONPOS_CASES, POSITIVE_CASES};
use mzv_core::{gzeta_positive, quasi_shuffle, stuffle_oracle, Renormalizer, WindowPolicy};

fn nonpositive(c: &mut Criterion) {
    let mut group = c.benchmark_group("gzeta_nonpos");
    for s in NONPOS_CASES {
        let label = format!("{s:?}");
        // a fresh evaluator each time, so nothing is served from the caches
        group.bench_with_input(BenchmarkId::from_parameter(label), s, |b, s| {
            b.iter(|| Renormalizer::new(WindowPolicy::default()).gzeta_nonpos(black_box(s)).unwrap())
        });
    }
    group.finish();

    let mut field = c.benchmark_group("gzeta_nonpos_field");
    field.sample_size(10);
    for s in [&[-1i64, -1][..], &[0, 0]] {
        field.bench_with_input(BenchmarkId::from_parameter(format!("{s:?}")), &s, |b, s| {
            b.iter(|| Renormalizer::new(WindowPolicy::default()).gzeta_nonpos_field(black_box(s)).unwrap())
        });
    }
    field.finish();
}

fn table(c: &mut Criterion) {
    let mut group = c.benchmark_group("table");
    group.sample_size(10);
    group.bench_function("8x7", |b| b.iter(whole_table));
    group.finish();
}

fn positive(c: &mut Criterion) {
    let mut group = c.benchmark_group("gzeta_positive");
    for s in POSITIVE_CASES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{s:?}")), s, |b, s| {
            b.iter(|| gzeta_positive(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn products(c: &mut Criterion) {
    let mut group = c.benchmark_group("products");
    for depth in [2, 3, 4] {
        let (a, b) = product_pair(depth);
        group.bench_with_input(BenchmarkId::new("quasi_shuffle", depth), &(&a, &b), |bch, (a, b)| {
            bch.iter(|| quasi_shuffle(black_box(a), black_box(b)))
        });
        group.bench_with_input(BenchmarkId::new("stuffle_oracle", depth), &(&a, &b), |bch, (a, b)| {
            bch.iter(|| stuffle_oracle(black_box(a), black_box(b)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, nonpositive, table, positive, products);
criterion_main!(benches);
