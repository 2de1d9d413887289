use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sepfill::bounds::{separator_as_components_bound, RecursionConfig, SubMethod};
use sepfill::csp::{solve_backtrack, solve_with_separator, CspInstance};
use sepfill::exact::{exact_treewidth, DEFAULT_EXACT_LIMIT};
use sepfill::fixtures::{fig1, grid};
use sepfill::graph::{Vertex, VertexSet};
use sepfill::{recursive_bound, Graph};

fn vs(items: &[Vertex]) -> VertexSet {
    items.iter().copied().collect()
}

fn bench_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_treewidth");
    for g in [("fig1", fig1()), ("grid3x4", grid(3, 4)), ("grid3x5", grid(3, 5))] {
        group.bench_with_input(BenchmarkId::from_parameter(g.0), &g.1, |b, graph| {
            b.iter(|| exact_treewidth(graph, DEFAULT_EXACT_LIMIT).unwrap().0)
        });
    }
    group.finish();
}

fn bench_bounds(c: &mut Criterion) {
    let g = fig1();
    let s = vs(&[3, 4, 5, 8]);
    let eval = |graph: &Graph| exact_treewidth(graph, DEFAULT_EXACT_LIMIT).map(|(w, _)| w);
    c.bench_function("components_bound_fig1", |b| {
        b.iter(|| separator_as_components_bound(&g, &s, &eval, SubMethod::Exact).unwrap())
    });
    let big = grid(5, 6);
    c.bench_function("recursive_bound_grid5x6", |b| {
        b.iter(|| recursive_bound(&big, &RecursionConfig::default()).unwrap().0)
    });
}

fn bench_csp(c: &mut Criterion) {
    let mut group = c.benchmark_group("csp_fig1_alldiff");
    for d in [3usize, 6] {
        let inst = CspInstance::all_diff(fig1(), d).unwrap();
        let order: Vec<Vertex> = inst.graph().vertices().collect();
        group.bench_with_input(BenchmarkId::new("backtrack", d), &inst, |b, inst| {
            b.iter(|| solve_backtrack(inst, &order).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("separator_recursive", d), &inst, |b, inst| {
            b.iter(|| solve_with_separator(inst, &vs(&[3, 4, 5, 8]), true).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_exact, bench_bounds, bench_csp);
criterion_main!(benches);
