use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use flames_core::{
    build_order, extract_minimal_preserver, fill_closure, is_flame, max_path_system,
    random_digraph, Precedence, VertexSet,
};

fn bench_max_path_system(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_path_system");
    for (n, m) in [(20usize, 60usize), (40, 160), (80, 400)] {
        let d = random_digraph(n, m, 7);
        let v = d.non_root_vertices().last().unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{n}v_{m}e")),
            &d,
            |b, d| b.iter(|| max_path_system(black_box(d), v).len()),
        );
    }
    group.finish();
}

fn bench_is_flame(c: &mut Criterion) {
    let host = random_digraph(40, 160, 13);
    let flame = extract_minimal_preserver(&host, &Precedence::lexicographic(&host))
        .unwrap()
        .to_digraph();
    c.bench_function("is_flame_40v", |b| b.iter(|| is_flame(black_box(&flame))));
}

fn bench_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construction");
    let host = random_digraph(12, 30, 11);
    let lex = Precedence::lexicographic(&host);
    group.bench_function("extract_12v_30e", |b| {
        b.iter(|| {
            extract_minimal_preserver(black_box(&host), &lex)
                .unwrap()
                .len()
        })
    });
    let flame = extract_minimal_preserver(&host, &lex).unwrap().to_digraph();
    let prec = Precedence::seeded(&flame, 3);
    group.bench_function("build_order_12v", |b| {
        b.iter(|| build_order(black_box(&flame), &prec).unwrap().steps.len())
    });
    group.finish();
}

fn bench_fill_closure(c: &mut Criterion) {
    let d = random_digraph(30, 90, 5);
    let x: VertexSet = d.non_root_vertices().take(3).collect();
    c.bench_function("fill_closure_30v_90e", |b| {
        b.iter(|| fill_closure(black_box(&d), &x).unwrap().len())
    });
}

criterion_group!(
    benches,
    bench_max_path_system,
    bench_is_flame,
    bench_construction,
    bench_fill_closure
);
criterion_main!(benches);
