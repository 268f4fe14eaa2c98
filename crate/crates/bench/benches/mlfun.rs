use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use stablesim_core::mittag_leffler::{frac_poisson_pmf, linnik_cdf, ml_two};
use stablesim_core::stable_rng::{LinnikParams, OneSidedIndex};
use std::hint::black_box;

fn bench_ml_two(c: &mut Criterion) {
    // one argument per evaluation regime
    let mut group = c.benchmark_group("ml_two");
    for (label, xi, z) in [
        ("series", 0.7, -1.0),
        ("asymptotic", 0.7, -300.0),
        ("integral", 0.5, -4.2),
    ] {
        group.bench_with_input(
            BenchmarkId::from_parameter(label),
            &(xi, z),
            |b, &(xi, z)| b.iter(|| black_box(ml_two(xi, 1.0, z).unwrap())),
        );
    }
    group.finish();
}

fn bench_pmf_and_cdf(c: &mut Criterion) {
    let nu = OneSidedIndex::new(0.6).unwrap();
    c.bench_function("frac_poisson_pmf_series", |b| {
        b.iter(|| black_box(frac_poisson_pmf(nu, 1.0, 1.0, 3).unwrap()))
    });
    let nu9 = OneSidedIndex::new(0.9).unwrap();
    c.bench_function("frac_poisson_pmf_contour", |b| {
        b.iter(|| black_box(frac_poisson_pmf(nu9, 2.0, 5.0, 20).unwrap()))
    });
    let params = LinnikParams::new(OneSidedIndex::new(0.7).unwrap(), 1.0).unwrap();
    c.bench_function("linnik_cdf", |b| {
        b.iter(|| black_box(linnik_cdf(params, 2.0).unwrap()))
    });
}

criterion_group!(benches, bench_ml_two, bench_pmf_and_cdf);
criterion_main!(benches);
