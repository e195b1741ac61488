use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use rootstack_core::cechtoric::{weight_decomposition, EquivariantSheafModel, ScanOptions};
use rootstack_core::rootmodel::{LocalChart, MonomialModule};
use rootstack_core::stackcheck::{stack_cohomology, GlobalQuotientModel, StackForms};
use rootstack_core::Schedule;

const SCHEDULES: [Schedule; 2] = [Schedule::Sequential, Schedule::Parallel];

fn label(s: Schedule) -> &'static str {
    match s {
        Schedule::Sequential => "sequential",
        Schedule::Parallel => "parallel",
    }
}

fn weight_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("weight_decomposition");
    for (n, i, m) in [(2usize, 1usize, -6i64), (3, 1, -8), (3, 2, 8)] {
        let model = EquivariantSheafModel::new(n, i, &[], m).unwrap();
        for s in SCHEDULES {
            let opts = ScanOptions { schedule: s, weight_bound: None };
            group.bench_with_input(BenchmarkId::new(label(s), format!("P{n} i={i} m={m}")), &model, |bench, model| {
                bench.iter(|| weight_decomposition(black_box(model), opts).unwrap())
            });
        }
    }
    group.finish();
}

fn stack_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("stack_cohomology");
    let model = GlobalQuotientModel::new(2, &[0, 1, 2], 4).unwrap();
    for s in SCHEDULES {
        let opts = ScanOptions { schedule: s, weight_bound: None };
        group.bench_function(BenchmarkId::new(label(s), "P2 b=4 a=(3,3,3)"), |bench| {
            bench.iter(|| {
                (0..=2)
                    .map(|i| stack_cohomology(&model, i, StackForms::Plain, &[3, 3, 3], &[0, 0, 0], opts).unwrap())
                    .collect::<Vec<_>>()
            })
        });
    }
    group.finish();
}

fn invariant_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("invariant_submodule_oracle");
    let chart = LocalChart::new(3, vec![5, 6, 4]).unwrap();
    let module = MonomialModule::new(chart, vec![11, 7, 9]).unwrap();
    for s in SCHEDULES {
        group.bench_function(BenchmarkId::new(label(s), "r=3 bound=60"), |bench| {
            bench.iter(|| black_box(&module).invariant_submodule_oracle(60, s).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, weight_scan, stack_scan, invariant_oracle);
criterion_main!(benches);
