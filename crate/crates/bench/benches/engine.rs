use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::Ratio;
use qseries_core::catalog::{lambert_expand, named_side, Catalog, LambertKind};
use qseries_core::hyperphi::qid_lhs;
use qseries_core::qproducts::{psi_product, psi_sum};
use qseries_core::wz::wz_grid;

fn products(c: &mut Criterion) {
    let mut g = c.benchmark_group("products");
    for order in [250, 500, 1000] {
        g.bench_with_input(BenchmarkId::new("psi", order), &order, |b, &n| b.iter(|| psi_product(black_box(n))));
        g.bench_with_input(BenchmarkId::new("pi2.rhs", order), &order, |b, &n| {
            b.iter(|| named_side("pi2.rhs", black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("sums");
    g.bench_function("psi sum 1000", |b| b.iter(|| psi_sum(black_box(1000))));
    g.bench_function("lambert pi2 1000", |b| b.iter(|| lambert_expand(LambertKind::Pi2, black_box(1000)).unwrap()));
    g.bench_function("qid lhs 300", |b| b.iter(|| qid_lhs(black_box(300)).unwrap()));
    g.finish();
}

fn catalog(c: &mut Criterion) {
    let cat = Catalog::builtin();
    let mut g = c.benchmark_group("catalog");
    g.sample_size(10);
    for id in ["pi2", "q2", "gl2"] {
        g.bench_function(id, |b| b.iter(|| cat.verify(id, None).unwrap()));
    }
    g.finish();
}

fn wz(c: &mut Criterion) {
    let mut g = c.benchmark_group("wz");
    g.sample_size(10);
    g.bench_function("grid a=1/2 10x10 order 60", |b| {
        b.iter(|| wz_grid(Ratio::new(1, 2), 10, 10, black_box(60)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, products, sums, catalog, wz);
criterion_main!(benches);
