use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use thh_bench::{case_one_answer, case_one_comodule, f5, pseudo_random_matrix, small_v0};
use thh_engine::algebra::Algebra;
use thh_engine::homological::{minimal_resolution, tor_via_bar};
use thh_engine::ktheory::run_scenario;
use thh_engine::steenrod::DualSteenrod;
use thh_engine::classify;

fn linear_algebra(c: &mut Criterion) {
    let m = pseudo_random_matrix(200, 7);
    c.bench_function("rank 200x200 over F_5", |b| b.iter(|| black_box(&m).rank()));
}

fn algebra(c: &mut Criterion) {
    c.bench_function("basis of Ω∞ ⊗ P(μ2) ⊗ Γ(b) through 120", |b| b.iter(|| case_one_answer(black_box(120))));
    let alg = case_one_answer(60);
    c.bench_function("associativity sweep through 40", |b| b.iter(|| alg.check_associativity(black_box(40))));
    c.bench_function("A_* through 100", |b| b.iter(|| DualSteenrod::new(f5(), black_box(100))));
}

fn homological(c: &mut Criterion) {
    let alg = Algebra::new(small_v0(), 60).expect("basis");
    c.bench_function("minimal resolution of E(x3) ⊗ P(y4) through 60", |b| {
        b.iter(|| minimal_resolution(black_box(&alg), 60))
    });
    let alg = Algebra::new(small_v0(), 28).expect("basis");
    c.bench_function("bar complex Tor of E(x3) ⊗ P(y4) through 28", |b| b.iter(|| tor_via_bar(black_box(&alg), 28)));
}

fn comodules(c: &mut Criterion) {
    let m = case_one_comodule(60);
    c.bench_function("primitives in degree 49", |b| b.iter(|| m.primitives(black_box(49))));
    c.bench_function("coassociativity through 50", |b| b.iter(|| m.check_coassociativity(black_box(50))));
}

fn scenarios(c: &mut Criterion) {
    let mut group = c.benchmark_group("scenarios");
    group.sample_size(10);
    for (id, q, d) in [("v0-thh-case1", 2, 100), ("dga-case1", 2, 120), ("bokstedt-case2", 7, 100), ("case4-resolution", 4, 10)] {
        let params = classify(q, 5).expect("reference pair");
        group.bench_function(format!("{id} to degree {d}"), |b| b.iter(|| run_scenario(id, &params, black_box(d))));
    }
    group.finish();
}

criterion_group!(benches, linear_algebra, algebra, homological, comodules, scenarios);
criterion_main!(benches);
