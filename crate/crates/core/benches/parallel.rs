use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use minlen_core::oracle::{run_suite, Profile};
use minlen_core::report::scan;
use minlen_core::{Execution, ScanParam, ScanSpec, Scenario};

fn modes() -> Vec<(&'static str, Execution)> {
    let mut m = vec![("sequential", Execution::Sequential)];
    if Execution::parallel_available() {
        m.push(("parallel", Execution::Parallel));
    }
    m
}

fn bench_scan(c: &mut Criterion) {
    let base = Scenario::default();
    let mut g = c.benchmark_group("scan");
    for steps in [64, 1024] {
        let spec = ScanSpec {
            param: ScanParam::DeltaX,
            start: 1e-18,
            stop: 5e-17,
            steps,
        };
        for (name, exec) in modes() {
            g.bench_with_input(BenchmarkId::new(name, steps), &spec, |b, spec| {
                b.iter(|| scan(black_box(&base), spec, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn bench_suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_fast");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_function(name, |b| {
            b.iter(|| run_suite(Profile::Fast, exec, None).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_scan, bench_suite);
criterion_main!(benches);
