use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use patrace_core::oracle::{dp_distribution, simulate_sequential, SimConfig};
use patrace_core::patterns::{Alphabet, Distribution, Pattern, PatternSystem};
use patrace_core::solver;

fn coin_race() -> PatternSystem {
    let alphabet = Alphabet::new(["H", "T"]).unwrap();
    let dist = Distribution::uniform(alphabet);
    let patterns = ["THH", "HTH", "HHT"]
        .iter()
        .map(|w| Pattern::parse(dist.alphabet(), w).unwrap())
        .collect();
    PatternSystem::new(dist, patterns).unwrap()
}

fn dna_race() -> PatternSystem {
    let alphabet = Alphabet::new(["A", "C", "G", "T"]).unwrap();
    let dist = Distribution::uniform(alphabet);
    let patterns = ["ACGT", "CGTA", "GACT", "TTTT"]
        .iter()
        .map(|w| Pattern::parse(dist.alphabet(), w).unwrap())
        .collect();
    PatternSystem::new(dist, patterns).unwrap()
}

fn bench_simulate(c: &mut Criterion) {
    let sys = coin_race();
    let cfg = SimConfig::new(20_000, 11);
    let mut group = c.benchmark_group("simulate_20k_trials");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| simulate_sequential(black_box(&sys), black_box(cfg)).unwrap());
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| {
            patrace_core::oracle::simulate_parallel(black_box(&sys), black_box(cfg)).unwrap()
        });
    });
    group.finish();
}

fn bench_dp(c: &mut Criterion) {
    let coin = coin_race();
    let dna = dna_race();
    let mut group = c.benchmark_group("dp_distribution_n30");
    group.bench_function("coin_race", |b| {
        b.iter(|| dp_distribution(black_box(&coin), black_box(30)));
    });
    group.bench_function("dna_race", |b| {
        b.iter(|| dp_distribution(black_box(&dna), black_box(30)));
    });
    group.finish();
}

fn bench_analyze(c: &mut Criterion) {
    let coin = coin_race();
    let dna = dna_race();
    let mut group = c.benchmark_group("analyze");
    group.bench_function("coin_race", |b| {
        b.iter(|| solver::analyze(black_box(&coin)).unwrap());
    });
    group.bench_function("dna_race", |b| {
        b.iter(|| solver::analyze(black_box(&dna)).unwrap());
    });
    group.finish();
}

criterion_group!(benches, bench_simulate, bench_dp, bench_analyze);
criterion_main!(benches);
