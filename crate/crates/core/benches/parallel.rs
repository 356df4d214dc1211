use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use basecondary::basecondary::{self as bc, ConeOptions};
use basecondary::geometry::PointConfig;
use basecondary::par::Execution;
use basecondary::rational::int;
use basecondary::random::DEFAULT_BOUND;
use basecondary::setfun::SetFunction;
use basecondary::tropical;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn reconstruct(c: &mut Criterion) {
    let config = PointConfig::line(&[1, 3, 6, 7, 10]).unwrap();
    let f = SetFunction::neg_gcd(&config).unwrap();
    let mut group = c.benchmark_group("reconstruct_polytope");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = ConeOptions { exec, ..ConeOptions::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| bc::reconstruct_polytope(&config, &f, &int(2), black_box(&opts)).unwrap())
        });
    }
    group.finish();
}

fn trop_sample(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_morse_fraction");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| tropical::sample_morse_fraction(black_box(&[0, 1, 2, 4]), 2000, 7, DEFAULT_BOUND, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, reconstruct, trop_sample);
criterion_main!(benches);
