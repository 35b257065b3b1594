//! One-thread pool against the default pool on the three hot paths: the
//! omega contraction behind `G`, the invariance check of `det M` over so_6,
//! and symmetrization plus centrality in the enveloping algebra.
//!
//! Built without the `parallel` feature both variants run the sequential
//! fallback, which gives the baseline for the rayon overhead.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use casimir_core::central_elements::{pfaffian_family, PfaffianSpec};
use casimir_core::lie_algebras::{algebra, AlgebraKind};
use casimir_core::par;
use casimir_core::poly_invariants::{c_k_poly, g_poly, is_invariant, Domain};

fn widths() -> Vec<(&'static str, usize)> {
    vec![("sequential", 1), ("pool", par::current_threads())]
}

fn bench_g_poly(c: &mut Criterion) {
    let mut group = c.benchmark_group("g_poly_4_4");
    group.sample_size(10);
    for (name, threads) in widths() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || g_poly(black_box(&[4]), black_box(&[4])).unwrap()))
        });
    }
    group.finish();
}

fn bench_invariance(c: &mut Criterion) {
    let so6 = algebra(AlgebraKind::So(6)).unwrap();
    let det = c_k_poly(6, 6).unwrap();
    let mut group = c.benchmark_group("det_invariance_so6");
    group.sample_size(10);
    for (name, threads) in widths() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || is_invariant(&so6, black_box(&det), Domain::General).unwrap()))
        });
    }
    group.finish();
}

fn bench_centrality(c: &mut Criterion) {
    let so6 = algebra(AlgebraKind::So(6)).unwrap();
    let mut group = c.benchmark_group("pfaffian_so6_centrality");
    group.sample_size(10);
    for (name, threads) in widths() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || pfaffian_family(&so6, PfaffianSpec::Full).unwrap().is_central()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_g_poly, bench_invariance, bench_centrality);
criterion_main!(benches);
