use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use toric4::sweep::{run_batch_with, Execution, Property};

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for property in [Property::OracleAgreement, Property::CongruenceScaled, Property::CompositionLaw] {
        group.bench_with_input(BenchmarkId::new("sequential", property.name()), &property, |b, &p| {
            b.iter(|| run_batch_with(p, 7, 64, Execution::Sequential))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", property.name()), &property, |b, &p| {
            b.iter(|| run_batch_with(p, 7, 64, Execution::Parallel))
        });
    }
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
