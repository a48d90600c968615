use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use mpcorr_core::{classify, decomposition, gell_mann_basis, measures, states};

fn bench_basis(c: &mut Criterion) {
    let mut group = c.benchmark_group("gell_mann_basis");
    for n in [2usize, 3, 4, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| gell_mann_basis(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn bench_decompose(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    for (name, rho) in mpcorr_bench::fixtures() {
        group.bench_function(name, |b| b.iter(|| decomposition::decompose(black_box(&rho)).unwrap()));
    }
    group.finish();

    let mut group = c.benchmark_group("reconstruct");
    for (name, rho) in mpcorr_bench::fixtures() {
        let d = decomposition::decompose(&rho).unwrap();
        group.bench_function(name, |b| b.iter(|| decomposition::reconstruct(black_box(&d)).unwrap()));
    }
    group.finish();
}

fn bench_classify(c: &mut Criterion) {
    let rho = states::generalized_werner(0.6, 0.2).unwrap();
    c.bench_function("ph_test", |b| b.iter(|| classify::ph_test(black_box(&rho)).unwrap()));
    c.bench_function("ph_test_signflip", |b| {
        b.iter(|| classify::ph_test_signflip(black_box(&rho)).unwrap())
    });
    c.bench_function("classify_two_qubit", |b| {
        b.iter(|| classify::classify_two_qubit(black_box(&rho)).unwrap())
    });
    let e3 = states::tripartite_qutrit_e3(0.3, -0.7).unwrap();
    c.bench_function("measure_all_3x3x3", |b| b.iter(|| measures::measure_all(black_box(&e3)).unwrap()));
}

criterion_group!(benches, bench_basis, bench_decompose, bench_classify);
criterion_main!(benches);
