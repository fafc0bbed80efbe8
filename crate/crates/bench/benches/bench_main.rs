use std::hint::black_box;

use active_seriation::asii::{bbs, BbsBudget, Instrument, Ranking};
use active_seriation::baselines::{adaptive_sorting, batch_observe, jacobi_eigen, spectral_order};
use active_seriation::rng::Stream;
use active_seriation::*;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn hidden(id: ScenarioId, n: usize, seed: u64) -> SimilarityMatrix {
    let r = generate(&ScenarioSpec::synthetic(id, n, 0.2, seed)).unwrap();
    let truth = Permutation::random(n, &mut Stream::new(seed + 1));
    apply_permutation(&r, &truth).unwrap()
}

fn bench_asii(c: &mut Criterion) {
    let mut g = c.benchmark_group("asii");
    for n in [30, 100] {
        let m = hidden(ScenarioId::S1, n, 7);
        let budget = 1_000 * n as u64;
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| {
                let mut o = Oracle::new(m.clone(), NoiseModel::gaussian(1.0).unwrap(), 3);
                black_box(asii(&mut o, budget, None).unwrap())
            })
        });
    }
    g.finish();
}

fn bench_bbs(c: &mut Criterion) {
    let n = 64;
    let m = generate(&ScenarioSpec::synthetic(ScenarioId::S2, n, 0.2, 0)).unwrap();
    let ranking = Ranking::from_order(n, &(0..n).filter(|&i| i != 40).collect::<Vec<_>>());
    let budget = BbsBudget { total: 1_000_000, n_tilde: n };
    c.bench_function("bbs/64", |b| {
        b.iter(|| {
            let mut o = Oracle::new(m.clone(), NoiseModel::gaussian(1.0).unwrap(), 5);
            black_box(bbs(&mut o, &ranking, 40, budget, Instrument::Off).unwrap())
        })
    });
}

fn bench_extension(c: &mut Criterion) {
    let m = hidden(ScenarioId::S3, 50, 2);
    c.bench_function("asii_extension/50", |b| {
        b.iter(|| {
            let mut o = Oracle::new(m.clone(), NoiseModel::gaussian(0.5).unwrap(), 9);
            black_box(asii_extension(&mut o, 200_000, 0.2, None).unwrap())
        })
    });
}

fn bench_batch(c: &mut Criterion) {
    let m = hidden(ScenarioId::S1, 100, 4);
    let mut o = Oracle::new(m, NoiseModel::gaussian(1.0).unwrap(), 1);
    let y = batch_observe(&mut o, 1_000_000).unwrap();
    c.bench_function("adaptive_sorting/100", |b| b.iter(|| black_box(adaptive_sorting(&y))));
    c.bench_function("spectral/100", |b| b.iter(|| black_box(spectral_order(&y.y).unwrap())));
    let data = y.y.as_slice().to_vec();
    c.bench_function("jacobi/100", |b| b.iter(|| black_box(jacobi_eigen(&data, 100).unwrap())));
}

fn bench_scenarios(c: &mut Criterion) {
    let mut g = c.benchmark_group("generate");
    for id in ScenarioId::SYNTHETIC {
        g.bench_function(id.as_str(), |b| {
            b.iter(|| black_box(generate(&ScenarioSpec::synthetic(id, 200, 0.2, 11)).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_asii, bench_bbs, bench_extension, bench_batch, bench_scenarios);
criterion_main!(benches);
