use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use troplines_core::{run_sweep_with, Execution, SweepParams};

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let cases = [
        ("exhaustive_n4_grid4", SweepParams::exhaustive(4, 4)),
        ("random_n6_500", SweepParams::random(6, 500, 20, 1)),
    ];
    for (name, params) in cases {
        for (label, exec) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            group.bench_with_input(BenchmarkId::new(name, label), &params, |b, p| {
                b.iter(|| run_sweep_with(p, exec, |_| {}).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
