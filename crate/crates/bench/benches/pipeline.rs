use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dgft_core::{
    build_candidates, construct, denoise_experiment, eig_sym, greedy_select, oracle_select,
    random_connected_digraph, DgftOptions, FilterSpec,
};
use std::hint::black_box;

fn bench_eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("eig_sym");
    for n in [16, 47, 100] {
        let g = random_connected_digraph(n, 5 * n, 1).unwrap();
        let view = g.undirected_view();
        group.bench_with_input(BenchmarkId::from_parameter(n), &view, |b, view| {
            b.iter(|| eig_sym(black_box(view)).unwrap())
        });
    }
    group.finish();
}

fn bench_selection(c: &mut Criterion) {
    let mut group = c.benchmark_group("selection");
    for n in [12, 18] {
        let g = random_connected_digraph(n, 4 * n, 2).unwrap();
        let d = construct(&g, &DgftOptions::default()).unwrap();
        let pairs = build_candidates(&g, &d.eigen, &d.fmax);
        group.bench_with_input(BenchmarkId::new("greedy", n), &pairs, |b, p| {
            b.iter(|| greedy_select(black_box(p), d.fmax.value))
        });
        group.bench_with_input(BenchmarkId::new("oracle", n), &pairs, |b, p| {
            b.iter(|| oracle_select(black_box(p), d.fmax.value).unwrap())
        });
    }
    group.finish();
}

fn bench_pipeline(c: &mut Criterion) {
    let g = random_connected_digraph(47, 505, 7).unwrap();
    c.bench_function("construct/47", |b| {
        b.iter(|| construct(black_box(&g), &DgftOptions::default()).unwrap())
    });

    let d = construct(&g, &DgftOptions::default()).unwrap();
    let spec = FilterSpec::new(4, 47).unwrap();
    c.bench_function("denoise/47x100", |b| {
        b.iter(|| denoise_experiment(&d.basis, &spec, 100, 1e-2, 0).unwrap())
    });
}

criterion_group!(benches, bench_eigensolver, bench_selection, bench_pipeline);
criterion_main!(benches);
