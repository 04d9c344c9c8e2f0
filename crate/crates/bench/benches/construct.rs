use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use polypade::arith::rat;
use polypade::criterion::{single_shift_threshold, two_shift_minimal_prime};
use polypade::pade::aux_p_value;
use polypade::pade::theta;
use polypade::padic::{eval_r_series, eval_zeta};
use polypade::recurrence::{find_recurrence, Samples};
use polypade::{PadeConfig, PadeSystem, RSpec};

fn two_shift() -> PadeConfig {
    PadeConfig::new(vec![rat(0, 1), rat(1, 2)], vec![1, 1]).unwrap()
}

fn construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    for n in [2u64, 4, 6] {
        g.bench_with_input(BenchmarkId::new("single_m2", n), &n, |b, &n| {
            let cfg = PadeConfig::single(2);
            b.iter(|| PadeSystem::build(&cfg, black_box(n), 0).unwrap())
        });
    }
    g.bench_function("two_shift_n4", |b| {
        let cfg = two_shift();
        b.iter(|| PadeSystem::build(&cfg, black_box(4), 1).unwrap())
    });
    g.finish();

    c.bench_function("theta/two_shift_n3", |b| {
        let cfg = two_shift();
        b.iter(|| theta(&cfg, black_box(3)).unwrap())
    });
}

fn padic(c: &mut Criterion) {
    let x = rat(1, 5);
    c.bench_function("zeta/p5_s3_prec15", |b| b.iter(|| eval_zeta(3, black_box(&x), 5, 15).unwrap()));
    let spec = RSpec::new(rat(0, 1), 2).unwrap();
    c.bench_function("rseries/p5_s2_prec15", |b| {
        b.iter(|| eval_r_series(&spec, black_box(&x), 5, 15).unwrap())
    });
}

fn recurrence(c: &mut Criterion) {
    let cfg = PadeConfig::single(1);
    let z = rat(1, 3);
    let values = (1..=16).map(|n| aux_p_value(&cfg, n, &z).unwrap()).collect();
    let samples = Samples::fixed(z, 1, values);
    c.bench_function("find_recurrence/m1", |b| {
        b.iter(|| find_recurrence(black_box(&samples), 3, 3, 0).unwrap())
    });
}

fn thresholds(c: &mut Criterion) {
    let mut g = c.benchmark_group("threshold");
    g.sample_size(10);
    for m in [1u64, 4, 8] {
        g.bench_with_input(BenchmarkId::new("single_shift", m), &m, |b, &m| {
            b.iter(|| single_shift_threshold(black_box(m), 1).unwrap())
        });
    }
    g.bench_function("two_shift_minimal_prime", |b| {
        b.iter(|| two_shift_minimal_prime(black_box(10), 1, 1).unwrap())
    });
    g.finish();
}

criterion_group!(benches, construction, padic, recurrence, thresholds);
criterion_main!(benches);
