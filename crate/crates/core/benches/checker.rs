use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use powerfree::extendability::{count_with, EnumerationLimits};
use powerfree::generators::{theta_word, thue_morse};
use powerfree::par::Execution;
use powerfree::repetition::{is_power_free_with, max_factor_exponent_with};
use powerfree::words::PowerBound;
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn checker(c: &mut Criterion) {
    let tm = thue_morse().prefix(1 << 14).unwrap();
    let theta = theta_word().prefix(10_000).unwrap();
    let mut group = c.benchmark_group("is_power_free");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "thue-morse-16384"), &tm, |b, w| {
            b.iter(|| is_power_free_with(black_box(w), PowerBound::integer_plus(2), exec))
        });
        group.bench_with_input(BenchmarkId::new(name, "theta-10000"), &theta, |b, w| {
            b.iter(|| is_power_free_with(black_box(w), PowerBound::integer(2), exec))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("max_factor_exponent");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "theta-10000"), &theta, |b, w| {
            b.iter(|| max_factor_exponent_with(black_box(w), exec).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let limits = EnumerationLimits::default();
    let mut group = c.benchmark_group("count_square_free");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "k3-n30"), |b| {
            b.iter(|| count_with(3, PowerBound::integer(2), black_box(30), exec, &limits).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, checker, enumeration);
criterion_main!(benches);
