use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use moment_core::{classify_with, realizable_on_NN, stieltjes_classify, GridSpec, MomentVector, SolverConfig, Strategy};

fn uniform_moments(atoms: &[i64], n: usize) -> MomentVector {
    let count = atoms.len() as i64;
    MomentVector::from_ratios(
        &(1..=n as u32)
            .map(|k| (atoms.iter().map(|a| a.pow(k)).sum::<i64>(), count))
            .collect::<Vec<_>>(),
    )
}

fn classify_by_length(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    // interior vectors: five atoms, so every prefix up to n = 8 stays inside
    let atoms = [0, 1, 3, 7, 12];
    for n in [2usize, 4, 5, 6, 8] {
        let m = uniform_moments(&atoms, n);
        for (name, strategy) in [("explicit", Strategy::Explicit), ("recursive", Strategy::Recursive)] {
            if strategy == Strategy::Recursive && !(4..=5).contains(&n) {
                continue;
            }
            let config = SolverConfig { strategy, ..SolverConfig::default() };
            group.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| {
                b.iter(|| classify_with(black_box(m), &GridSpec::Nn0, &config).unwrap())
            });
        }
    }
    group.finish();
}

fn half_line(c: &mut Criterion) {
    let m = uniform_moments(&[0, 1, 3, 7, 12], 8);
    c.bench_function("stieltjes_classify/8", |b| b.iter(|| stieltjes_classify(black_box(&m))));
}

fn finite_conditions(c: &mut Criterion) {
    let m = uniform_moments(&[0, 1, 3, 7], 4);
    let mut group = c.benchmark_group("realizable_on_NN");
    for big_n in [10u64, 20, 30] {
        group.bench_with_input(BenchmarkId::from_parameter(big_n), &big_n, |b, &big_n| {
            b.iter(|| realizable_on_NN(black_box(&m), big_n).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, classify_by_length, half_line, finite_conditions);
criterion_main!(benches);
