use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dlb_lab::harness::{run_experiment, BudgetRule, ExperimentConfig, ObjectiveId};
use dlb_lab::heuristics::SolverSpec;

fn grid(runs: usize) -> ExperimentConfig {
    ExperimentConfig {
        objective: ObjectiveId::Dlb,
        algorithms: vec![
            ("metropolis".into(), SolverSpec::Metropolis { alpha: 3.0 }),
            ("parity".into(), SolverSpec::ParityHillclimber),
            ("binary".into(), SolverSpec::BinaryUnbiased),
        ],
        sizes: vec![40],
        runs_per_cell: runs,
        master_seed: 7,
        budget: BudgetRule::Polynomial {
            factor: 100,
            exponent: 3,
        },
        record_wall_time: false,
    }
}

fn sequential_vs_parallel(c: &mut Criterion) {
    let cfg = grid(16);
    let mut group = c.benchmark_group("run_experiment");
    group.sample_size(10);
    group.bench_with_input(BenchmarkId::new("workers", 1), &cfg, |b, cfg| {
        b.iter(|| run_experiment(cfg, Some(1)).unwrap())
    });
    group.bench_with_input(BenchmarkId::new("workers", "all"), &cfg, |b, cfg| {
        b.iter(|| run_experiment(cfg, None).unwrap())
    });
    group.finish();
}

criterion_group!(benches, sequential_vs_parallel);
criterion_main!(benches);
