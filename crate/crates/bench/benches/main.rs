use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use homtile_core::constructions::{
    build_extremal_graph, build_k333_counterexample, random_graph, standard_patterns, ExtremalSpec,
};
use homtile_core::graph::complete_graph;
use homtile_core::hom::{count_homomorphisms, enumerate_injective_copies};
use homtile_core::lp::solve;
use homtile_core::rat::rat;
use homtile_core::tiling::{
    build_tiling_lp, fractional_cover_number, integral_tiling_number, Limits,
};

fn hom_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("hom_enumeration");
    for n in [7usize, 8, 9] {
        let g = complete_graph(n);
        let h = standard_patterns("K3").unwrap();
        group.bench_with_input(BenchmarkId::new("triangles_into_kn", n), &n, |b, _| {
            b.iter(|| count_homomorphisms(h.graph(), &g));
        });
    }
    let k9 = complete_graph(9);
    let k333 = standard_patterns("K_3,3,3").unwrap();
    group.sample_size(10);
    group.bench_function("tripartite_copies_into_k9", |b| {
        b.iter(|| enumerate_injective_copies(&k333, &k9).len());
    });
    group.finish();
}

fn exact_simplex(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_simplex");
    let h = standard_patterns("C4").unwrap();
    for (n, seed) in [(8usize, 1u64), (10, 2)] {
        let g = random_graph(n, &rat(3, 4), seed).unwrap();
        let (lp, cols) = build_tiling_lp(&g, &h).unwrap();
        group.bench_with_input(
            BenchmarkId::new("tiling_lp", format!("n{n}_cols{}", cols.len())),
            &lp,
            |b, lp| b.iter(|| solve(lp).unwrap().value),
        );
    }
    group.finish();
}

fn lazy_cover(c: &mut Criterion) {
    let mut group = c.benchmark_group("lazy_cover");
    let limits = Limits::default();
    let spec = ExtremalSpec::new(3, 3, 1, rat(1, 12), 24);
    let host = build_extremal_graph(&spec).unwrap();
    let k3 = standard_patterns("K3").unwrap();
    group.bench_function("layered_host_n24", |b| {
        b.iter(|| fractional_cover_number(&host.graph, &k3, &limits).unwrap().0);
    });
    group.finish();
}

fn branch_and_bound(c: &mut Criterion) {
    let mut group = c.benchmark_group("branch_and_bound");
    let limits = Limits::default();
    let k9 = complete_graph(9);
    let k3 = standard_patterns("K3").unwrap();
    group.bench_function("triangle_packing_k9", |b| {
        b.iter(|| integral_tiling_number(&k9, &k3, None, &limits).unwrap().0);
    });
    group.sample_size(10);
    let host = build_k333_counterexample(&rat(1, 10), 20).unwrap();
    let k333 = standard_patterns("K_3,3,3").unwrap();
    group.bench_function("tripartite_packing_counterexample", |b| {
        b.iter(|| {
            integral_tiling_number(&host.graph, &k333, Some(2), &limits)
                .unwrap()
                .0
        });
    });
    group.finish();
}

criterion_group!(
    benches,
    hom_enumeration,
    exact_simplex,
    lazy_cover,
    branch_and_bound
);
criterion_main!(benches);
