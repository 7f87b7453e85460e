//! Sequential vs parallel timings for the data-parallel inner loops:
//! admissible-triple enumeration and the Monte Carlo membership harness.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use conelab::exec::ExecMode;
use conelab::horn::horn_triples_mode;
use conelab::lrmn::lrmn_triples_mode;
use conelab::verify::{run_verify, ConeId, VerifyConfig};

fn modes() -> Vec<(&'static str, ExecMode)> {
    let mut m = vec![("seq", ExecMode::Sequential)];
    if cfg!(feature = "parallel") {
        m.push(("par", ExecMode::Parallel));
    }
    m
}

fn bench_horn_triples(c: &mut Criterion) {
    let mut group = c.benchmark_group("horn_triples_n6_r3");
    for (label, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(label), &mode, |b, &mode| {
            b.iter(|| horn_triples_mode(6, 3, false, mode).unwrap().len());
        });
    }
    group.finish();
}

fn bench_lrmn_triples(c: &mut Criterion) {
    let mut group = c.benchmark_group("lrmn_triples_3_3_half");
    for (label, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(label), &mode, |b, &mode| {
            b.iter(|| lrmn_triples_mode(3, 3, false, true, mode).unwrap().len());
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_a22_100_samples");
    group.sample_size(10);
    for (label, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(label), &mode, |b, &mode| {
            b.iter(|| {
                run_verify(&VerifyConfig {
                    cone: ConeId::A { p: 2, q: 2 },
                    samples: 100,
                    seed: 7,
                    tol: 1e-8,
                    mode,
                })
                .unwrap()
                .passed
            });
        });
    }
    group.finish();
}

criterion_group!(benches, bench_horn_triples, bench_lrmn_triples, bench_verify);
criterion_main!(benches);
